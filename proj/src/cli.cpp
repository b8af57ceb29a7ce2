#include "ghr/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ghr/admissibility.hpp"
#include "ghr/cw_model.hpp"
#include "ghr/equipart.hpp"
#include "ghr/errors.hpp"
#include "ghr/graycode.hpp"
#include "ghr/moment_geometry.hpp"

namespace ghr::cli {

namespace {

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw ParameterError("unknown format '" + s + "'");
}

std::string join(const std::vector<int>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string join_rows(const std::vector<std::string>& rows) {
    std::string s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += '|';
        s += rows[i];
    }
    return s;
}

EquipartingMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open matrix file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParameterError("matrix file is empty");
    if (text[first] == '{') return parse_matrix_json(text);
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return parse_matrix_text(lines);
}

BitColumn parse_start(int k, const std::string& s) {
    if (s.empty()) return BitColumn::zero(k);
    BitColumn c = BitColumn::parse(s);
    if (c.k != k) throw ParameterError("start column length must equal k");
    return c;
}

int cmd_gray(int k, const std::string& start_str, Format fmt, std::ostream& out) {
    const auto codes = enumerate_gray_codes(k, parse_start(k, start_str));
    if (fmt == Format::Json) {
        nlohmann::ordered_json doc;
        doc["k"] = k;
        doc["start"] = parse_start(k, start_str).str();
        doc["count"] = codes.size();
        doc["codes"] = nlohmann::json::array();
        for (const GrayCode& g : codes)
            doc["codes"].push_back({{"flips", g.flips}, {"rows", g.to_matrix().row_strings()}});
        out << doc.dump() << "\n";
    } else if (fmt == Format::Csv) {
        out << "flips,rows\n";
        for (const GrayCode& g : codes)
            out << join(g.flips, ';') << "," << join_rows(g.to_matrix().row_strings()) << "\n";
    } else {
        for (const GrayCode& g : codes) out << g.flips_str() << "\n";
        out << "count=" << codes.size() << "\n";
    }
    return 0;
}

int cmd_classes(int k, const std::string& start_str, Format fmt, std::ostream& out) {
    const auto classes = gray_classes(k, parse_start(k, start_str));
    if (fmt == Format::Json) {
        nlohmann::ordered_json doc = nlohmann::json::array();
        for (const GrayClass& c : classes)
            doc.push_back({{"size", c.size},
                           {"counts", c.sorted_counts},
                           {"representative", c.representative.flips}});
        out << doc.dump() << "\n";
    } else if (fmt == Format::Csv) {
        out << "size,counts,representative\n";
        for (const GrayClass& c : classes)
            out << c.size << "," << join(c.sorted_counts, ';') << ","
                << join(c.representative.flips, ';') << "\n";
    } else {
        for (std::size_t i = 0; i < classes.size(); ++i)
            out << "class " << i + 1 << ": size=" << classes[i].size << " counts="
                << join(classes[i].sorted_counts, ',') << " representative="
                << classes[i].representative.flips_str() << "\n";
        out << "count=" << classes.size() << "\n";
    }
    return 0;
}

int cmd_count(int j, int k, Format fmt, std::ostream& out) {
    const auto [d, ell] = ramos_bound(j, k);
    const Int n = count_classes(ParamTriple(j, k, d, ell));
    if (fmt == Format::Json) {
        nlohmann::ordered_json doc{{"j", j}, {"k", k}, {"d", d}, {"ell", ell}, {"count", n.str()}};
        out << doc.dump() << "\n";
    } else if (fmt == Format::Csv) {
        out << "j,k,d,ell,count\n" << j << "," << k << "," << d << "," << ell << "," << n.str() << "\n";
    } else {
        out << "d=" << d << " ell=" << ell << " count=" << n.str() << "\n";
    }
    return 0;
}

// Defaults to JSON lines; class lists can be large, so one document per line.
int cmd_enumerate(int j, int k, const std::string& out_path, Format fmt, int threads,
                  std::ostream& out) {
    const auto [d, ell] = ramos_bound(j, k);
    const auto classes = enumerate_classes(ParamTriple(j, k, d, ell), default_class_cap(), threads);

    std::ofstream file;
    std::ostream* dst = &out;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ParameterError("cannot open output file '" + out_path + "'");
        dst = &file;
    }
    if (fmt == Format::Csv) {
        *dst << "j,k,d,ell,rows\n";
        for (const EquipartingMatrix& em : classes)
            *dst << j << "," << k << "," << d << "," << ell << "," << join_rows(em.m.row_strings())
                 << "\n";
    } else if (fmt == Format::Text) {
        for (const EquipartingMatrix& em : classes) {
            for (const std::string& row : em.m.row_strings()) *dst << row << "\n";
            *dst << "\n";
        }
    } else {
        for (const EquipartingMatrix& em : classes) *dst << matrix_to_json(em) << "\n";
    }
    if (dst == &file) out << "classes=" << classes.size() << "\n";
    return 0;
}

int cmd_verify(const std::string& path, Format fmt, std::ostream& out) {
    const EquipartingMatrix em = read_matrix_file(path);
    const Diagnostic diag = validate(em);
    bool equi = false;
    std::string witness;
    if (diag.ok) {
        const IntervalLayout L = layout_points(em.params);
        const ArrangementSpec a = matrix_to_arrangement(em, L);
        const VerifyResult v = verify_equipartition(a, L, em);
        equi = v.ok;
        witness = v.witness;
    }
    if (fmt == Format::Json) {
        nlohmann::ordered_json doc{{"valid", diag.ok},
                                   {"equipartition", equi}};
        if (!diag.ok) doc["reason"] = diag.reason;
        if (!witness.empty()) doc["witness"] = witness;
        out << doc.dump() << "\n";
    } else {
        out << "valid: " << (diag.ok ? "yes" : ("no (" + diag.reason + ")")) << "\n";
        out << "equipartition: " << (equi ? "yes" : "no") << "\n";
        if (!witness.empty()) out << "witness: " << witness << "\n";
    }
    return (diag.ok && equi) ? 0 : 1;
}

int cmd_roundtrip(const std::string& path, Format fmt, std::ostream& out) {
    const EquipartingMatrix em = read_matrix_file(path);
    const Diagnostic diag = validate(em);
    if (!diag.ok) {
        out << "valid: no (" << diag.reason << ")\n";
        return 1;
    }
    const IntervalLayout L = layout_points(em.params);
    const ArrangementSpec a = matrix_to_arrangement(em, L);
    const VerifyResult v = verify_equipartition(a, L, em);
    const EquipartingMatrix back = arrangement_to_matrix(a, L);
    const bool ok = v.ok && back == em;
    if (fmt == Format::Json) {
        nlohmann::ordered_json doc{{"equipartition", v.ok}, {"roundtrip", back == em}};
        doc["arrangement"] = nlohmann::json::parse(arrangement_to_json(a));
        out << doc.dump() << "\n";
    } else {
        out << "equipartition: " << (v.ok ? "yes" : "no") << "\n";
        out << "roundtrip: " << (back == em ? "ok" : "mismatch") << "\n";
        out << "arrangement: " << arrangement_to_json(a) << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_cells(int d, int k, Format fmt, std::ostream& out) {
    const auto by_dim = enumerate_cells(d, k);
    if (fmt == Format::Json) {
        nlohmann::ordered_json doc;
        for (const auto& [dim, cells] : by_dim) {
            auto& arr = doc[std::to_string(dim)];
            arr = nlohmann::json::array();
            for (const Cell& c : cells) arr.push_back(cell_str(c));
        }
        out << doc.dump() << "\n";
    } else if (fmt == Format::Csv) {
        out << "dim,cell\n";
        for (const auto& [dim, cells] : by_dim)
            for (const Cell& c : cells) out << dim << "," << cell_str(c) << "\n";
    } else {
        for (const auto& [dim, cells] : by_dim) {
            out << "dim " << dim << " (" << cells.size() << " cells):\n";
            for (const Cell& c : cells) out << "  " << cell_str(c) << "\n";
        }
    }
    return 0;
}

int cmd_stats(int d, int k, Format fmt, std::ostream& out) {
    const ComplexStats st = stats(d, k);
    if (fmt == Format::Csv) {
        out << "dim,cells,orbits,nonfree\n";
        for (const auto& [dim, n] : st.cells_by_dim) {
            const auto orb = st.orbits_by_dim.find(dim);
            const auto nf = st.nonfree_cells_by_dim.find(dim);
            out << dim << "," << n << "," << (orb == st.orbits_by_dim.end() ? 0 : orb->second) << ","
                << (nf == st.nonfree_cells_by_dim.end() ? 0 : nf->second) << "\n";
        }
    } else if (fmt == Format::Text) {
        out << "dim cells orbits nonfree\n";
        for (const auto& [dim, n] : st.cells_by_dim) {
            const auto orb = st.orbits_by_dim.find(dim);
            const auto nf = st.nonfree_cells_by_dim.find(dim);
            out << dim << " " << n << " " << (orb == st.orbits_by_dim.end() ? 0 : orb->second) << " "
                << (nf == st.nonfree_cells_by_dim.end() ? 0 : nf->second) << "\n";
        }
        out << "euler=" << st.euler << "\n";
    } else {
        nlohmann::ordered_json doc;
        auto to_obj = [](const std::map<int, std::uint64_t>& m) {
            nlohmann::ordered_json o;
            for (const auto& [dim, n] : m) o[std::to_string(dim)] = n;
            return o;
        };
        doc["cells_by_dim"] = to_obj(st.cells_by_dim);
        doc["orbits_by_dim"] = to_obj(st.orbits_by_dim);
        doc["nonfree_cells_by_dim"] = to_obj(st.nonfree_cells_by_dim);
        doc["euler"] = st.euler;
        out << doc.dump() << "\n";
    }
    return 0;
}

int cmd_facets(const std::string& cell_s, Format fmt, std::ostream& out) {
    const Cell c = parse_cell(cell_s);
    const std::vector<Cell> fs = facets(c);
    if (fmt == Format::Json) {
        nlohmann::ordered_json doc;
        doc["cell"] = cell_str(c);
        doc["dim"] = c.dim;
        doc["facets"] = nlohmann::json::array();
        for (const Cell& f : fs) doc["facets"].push_back(cell_str(f));
        out << doc.dump() << "\n";
    } else if (fmt == Format::Csv) {
        out << "facet\n";
        for (const Cell& f : fs) out << cell_str(f) << "\n";
    } else {
        out << "cell: " << cell_str(c) << " (dim " << c.dim << ")\n";
        for (const Cell& f : fs) out << "  " << cell_str(f) << "\n";
        out << "count=" << fs.size() << "\n";
    }
    return 0;
}

int cmd_delta(int j, int k, Format fmt, std::ostream& out) {
    const DeltaReport rep = decide(j, k);
    if (fmt == Format::Json) {
        out << rep.json() << "\n";
    } else if (fmt == Format::Csv) {
        out << "j,k,d,ell,count,status,lower,upper\n";
        out << rep.j << "," << rep.k << "," << rep.d << "," << rep.ell << ","
            << (rep.class_count ? rep.class_count->str() : "") << "," << status_str(rep.status) << ","
            << rep.lower << "," << (rep.upper ? std::to_string(*rep.upper) : "") << "\n";
    } else {
        out << rep.text();
    }
    return 0;
}

int cmd_table1(Format fmt, int threads, std::ostream& out) {
    const auto rows = table1(threads);
    bool all_ok = true;
    if (fmt == Format::Csv) {
        out << "j,k,ell,d,count\n";
        for (const Table1Row& r : rows) {
            out << r.j << "," << r.k << "," << r.ell << "," << r.d << "," << r.computed.str() << "\n";
            all_ok = all_ok && r.ok;
        }
    } else if (fmt == Format::Json) {
        nlohmann::ordered_json doc = nlohmann::json::array();
        for (const Table1Row& r : rows) {
            doc.push_back({{"j", r.j},
                           {"k", r.k},
                           {"ell", r.ell},
                           {"d", r.d},
                           {"expected", r.expected.str()},
                           {"computed", r.computed.str()},
                           {"ok", r.ok}});
            all_ok = all_ok && r.ok;
        }
        out << doc.dump() << "\n";
    } else {
        out << "j k ell d expected computed status\n";
        for (const Table1Row& r : rows) {
            out << r.j << " " << r.k << " " << r.ell << " " << r.d << " " << r.expected.str() << " "
                << r.computed.str() << " " << (r.ok ? "pass" : "FAIL") << "\n";
            all_ok = all_ok && r.ok;
        }
        out << (all_ok ? "all rows match\n" : "MISMATCH\n");
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gray-code and hyperplane mass-partition toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    app.add_option("--format", format, "Output format: text, json, or csv")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads for enumeration")->capture_default_str();

    int j = 0, k = 0, d = 0;
    std::string start, matrix_path, out_path, cell_s;

    auto* gray = app.add_subcommand("gray", "Enumerate k-bit Gray codes from a fixed start column");
    gray->add_option("-k", k, "Number of rows")->required();
    gray->add_option("--start", start, "Start column, most significant row first");

    auto* classes = app.add_subcommand("classes", "Gray-code equivalence classes for a fixed start");
    classes->add_option("-k", k, "Number of rows")->required();
    classes->add_option("--start", start, "Start column, most significant row first");

    auto* count = app.add_subcommand("count", "Count equiparting-matrix classes at the Ramos bound");
    count->add_option("-j", j, "Number of masses")->required();
    count->add_option("-k", k, "Number of hyperplanes")->required();

    auto* enumerate = app.add_subcommand("enumerate", "List equiparting-matrix class representatives");
    enumerate->add_option("-j", j, "Number of masses")->required();
    enumerate->add_option("-k", k, "Number of hyperplanes")->required();
    enumerate->add_option("--out", out_path, "Write matrices to this file");

    auto* verify = app.add_subcommand("verify", "Check a matrix and its induced equipartition");
    verify->add_option("--matrix", matrix_path, "Matrix file (text rows or JSON)")->required();

    auto* roundtrip = app.add_subcommand("roundtrip", "Matrix -> arrangement -> matrix identity check");
    roundtrip->add_option("--matrix", matrix_path, "Matrix file (text rows or JSON)")->required();

    auto* cells = app.add_subcommand("cells", "Enumerate canonical cells of the join complex");
    cells->add_option("-d", d, "Sphere dimension")->required();
    cells->add_option("-k", k, "Number of join factors")->required();

    auto* stats_cmd = app.add_subcommand("stats", "Cell, orbit, and Euler statistics of the complex");
    stats_cmd->add_option("-d", d, "Sphere dimension")->required();
    stats_cmd->add_option("-k", k, "Number of join factors")->required();

    auto* facets_cmd = app.add_subcommand("facets", "Codimension-1 boundary cells of a cell");
    facets_cmd->add_option("--cell", cell_s, "Cell string sigma=..;I=..;S=..;d=..;k=..")->required();

    auto* delta = app.add_subcommand("delta", "Decide the minimal equipartition dimension Delta(j,k)");
    delta->add_option("-j", j, "Number of masses")->required();
    delta->add_option("-k", k, "Number of hyperplanes")->required();

    app.add_subcommand("table1", "Recompute the stored class-count reference table");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        const Format fmt = parse_format(format);
        if (threads < 1) throw ParameterError("--threads must be >= 1");
        if (gray->parsed()) return cmd_gray(k, start, fmt, out);
        if (classes->parsed()) return cmd_classes(k, start, fmt, out);
        if (count->parsed()) return cmd_count(j, k, fmt, out);
        if (enumerate->parsed()) {
            const bool explicit_fmt = app.get_option("--format")->count() > 0;
            return cmd_enumerate(j, k, out_path, explicit_fmt ? fmt : Format::Json, threads, out);
        }
        if (verify->parsed()) return cmd_verify(matrix_path, fmt, out);
        if (roundtrip->parsed()) return cmd_roundtrip(matrix_path, fmt, out);
        if (cells->parsed()) return cmd_cells(d, k, fmt, out);
        if (stats_cmd->parsed()) return cmd_stats(d, k, fmt, out);
        if (facets_cmd->parsed()) return cmd_facets(cell_s, fmt, out);
        if (delta->parsed()) return cmd_delta(j, k, fmt, out);
        return cmd_table1(fmt, threads, out);
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const DegeneracyError& e) {
        err << "degeneracy: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace ghr::cli
