// Command-line front end. Exit codes: 0 success, 1 a check failed, 2 bad input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "k3glue/k3glue.hpp"

namespace {

using namespace k3glue;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int default_digits() {
    const char* env = std::getenv("K3GLUE_DIGITS");
    if (env == nullptr || *env == '\0') return 5;
    try {
        std::size_t used = 0;
        int d = std::stoi(env, &used);
        if (used != std::string(env).size() || d < 1 || d > 200) throw std::invalid_argument("range");
        return d;
    } catch (const std::exception&) {
        throw InputError(std::string("K3GLUE_DIGITS must be an integer in [1, 200], got '") + env + "'");
    }
}

LatticeFile load(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return parse_lattice_file(ss.str());
    }
    return read_lattice_file(path);
}

IntPoly parse_poly(const std::string& text) {
    std::vector<Integer> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            coeffs.push_back(parse_integer(item));
        } catch (const std::exception& e) {
            throw InputError("--poly expects comma-separated integers, constant term first: " + std::string(e.what()));
        }
    }
    if (coeffs.empty()) throw InputError("--poly is empty");
    return IntPoly(coeffs);
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out) throw InputError("cannot write '" + output + "'");
    out << text;
}

std::string matrix_table(const IntMatrix& m) {
    std::ostringstream out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
        out << "\n";
    }
    return out.str();
}

std::string lattice_document(const LatticeFile& f, const std::string& format) {
    if (format == "json") return write_lattice_file(f);
    std::string s = "gram (rank " + std::to_string(f.gram.rows()) + "):\n" + matrix_table(f.gram);
    if (f.isometry) s += "isometry:\n" + matrix_table(*f.isometry);
    return s;
}

int cmd_certify(const std::string& format, int digits) {
    CertificationReport r = certify(digits);
    std::cout << (format == "json" ? report_to_json(r).dump(2) + "\n" : report_to_table(r));
    return r.passed() ? kOk : kCheckFailed;
}

int cmd_lattice_info(const std::string& path, const std::string& format) {
    LatticeFile f = load(path);
    Lattice l(f.gram);
    GlueGroup g(l);
    auto comps = sylow_decomposition(g);
    LatticeInvariants inv = lattice_invariants(l);

    Json j;
    j["rank"] = l.rank();
    j["det"] = inv.det.get_str();
    j["even"] = inv.even;
    j["unimodular"] = inv.unimodular;
    j["signature"] = {inv.signature.positive, inv.signature.negative};
    Json orders = Json::array();
    for (const auto& o : g.orders()) orders.push_back(o.get_str());
    j["glue_orders"] = orders;
    Json sylow = Json::array();
    for (const auto& c : comps) {
        Json e;
        e["prime"] = c.prime.get_str();
        Json os = Json::array();
        for (const auto& o : c.orders) os.push_back(o.get_str());
        e["orders"] = os;
        e["killed_by_p"] = c.killed_by_p;
        sylow.push_back(e);
    }
    j["sylow"] = sylow;
    Json form = Json::array();
    for (std::size_t a = 0; a < g.generator_count(); ++a) {
        for (std::size_t b = a; b < g.generator_count(); ++b) {
            Json e;
            e["i"] = a;
            e["j"] = b;
            e["b"] = torsion_bilinear(g, g.lifts()[a], g.lifts()[b]).to_string();
            if (a == b && l.is_even()) e["q"] = torsion_quadratic(g, g.lifts()[a]).to_string();
            form.push_back(e);
        }
    }
    j["torsion_form"] = form;

    int code = kOk;
    if (f.isometry) {
        Json iso;
        try {
            Isometry t(l, *f.isometry);
            iso["valid"] = true;
            iso["charpoly"] = t.charpoly().to_string();
            GlueAction act = induced_glue_action(t, g);
            Json parts = Json::array();
            for (const auto& p : act.parts) {
                Json e;
                e["prime"] = p.prime.get_str();
                e["action"] = matrix_to_json(p.matrix);
                if (p.charpoly_mod_p) e["charpoly_mod_p"] = p.charpoly_mod_p->to_string();
                parts.push_back(e);
            }
            iso["glue_action"] = parts;
            if (l.is_unimodular() && l.is_even() && l.rank() % 2 == 0) {
                SquareCondition sc = square_condition(t.charpoly());
                iso["square_conditions"] = sc.holds();
            }
        } catch (const IsometryError& e) {
            iso["valid"] = false;
            iso["error"] = e.what();
            code = kCheckFailed;
        }
        j["isometry"] = iso;
    }

    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "rank        " << l.rank() << "\n"
                  << "det         " << inv.det << "\n"
                  << "even        " << (inv.even ? "yes" : "no") << "\n"
                  << "unimodular  " << (inv.unimodular ? "yes" : "no") << "\n"
                  << "signature   " << to_string(inv.signature) << "\n"
                  << "glue group  ";
        if (g.orders().empty()) std::cout << "0";
        for (std::size_t i = 0; i < g.orders().size(); ++i) std::cout << (i ? " + " : "") << "Z/" << g.orders()[i];
        std::cout << "\n";
        for (const auto& e : form) {
            std::cout << "  b(g" << e["i"].get<std::size_t>() << ", g" << e["j"].get<std::size_t>()
                      << ") = " << e["b"].get<std::string>();
            if (e.contains("q")) std::cout << "   q(g" << e["i"].get<std::size_t>() << ") = " << e["q"].get<std::string>();
            std::cout << "\n";
        }
        if (f.isometry) {
            const Json& iso = j["isometry"];
            if (iso["valid"].get<bool>()) {
                std::cout << "isometry    charpoly " << iso["charpoly"].get<std::string>() << "\n";
                for (const auto& p : iso["glue_action"]) {
                    std::cout << "  on p = " << p["prime"].get<std::string>();
                    if (p.contains("charpoly_mod_p")) std::cout << ": charpoly mod p " << p["charpoly_mod_p"].get<std::string>();
                    std::cout << "\n";
                }
            } else {
                std::cout << "isometry    invalid: " << iso["error"].get<std::string>() << "\n";
            }
        }
    }
    return code;
}

Isometry isometry_or_identity(const LatticeFile& f) {
    Lattice l(f.gram);
    IntMatrix m = f.isometry ? *f.isometry : IntMatrix::identity(l.rank());
    return Isometry(l, m);
}

int cmd_glue(const std::string& p1, const std::string& p2, const std::string& format, const std::string& output) {
    LatticeFile f1 = load(p1), f2 = load(p2);
    std::optional<Isometry> t1, t2;
    try {
        t1 = isometry_or_identity(f1);
        t2 = isometry_or_identity(f2);
    } catch (const IsometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    try {
        GlueSide s1(*t1), s2(*t2);
        GlueMap gamma = find_glue_map(s1, s2);
        GluingResult r = glue(s1, s2, gamma);
        Isometry t = extend_isometry(r, *t1, *t2);
        emit(lattice_document({r.ambient.gram(), t.matrix()}, format), output);
        return kOk;
    } catch (const NoGlueMap& e) {
        std::cerr << "no glue map: " << e.what() << "\n";
    } catch (const GluingError& e) {
        std::cerr << "gluing failed: " << e.what() << "\n";
    } catch (const NonIntegralExtension& e) {
        std::cerr << "isometry does not extend: " << e.what() << "\n";
    }
    return kCheckFailed;
}

int cmd_twist(const std::string& path, const std::string& poly, const std::string& format, const std::string& output) {
    LatticeFile f = load(path);
    if (!f.isometry) throw InputError("twist requires an isometry in the lattice file");
    IntPoly a = parse_poly(poly);
    try {
        Isometry t(Lattice(f.gram), *f.isometry);
        Lattice tw = twist(t, a);
        emit(lattice_document({tw.gram(), t.matrix()}, format), output);
        return kOk;
    } catch (const IsometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const SingularMatrix& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const LatticeError& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kCheckFailed;
}

int cmd_table1(int digits, const std::string& format) {
    L2Data l2 = build_L2();
    RealSubfieldElement e = l2.twist.a_real * RealSubfieldElement::from_cyclo(trace_form_scale(l2.field));
    std::vector<EmbeddingValue> ev = real_embedding_signs(e, digits);
    if (format == "json") {
        Json j;
        j["digits"] = digits;
        Json rows = Json::array();
        for (const auto& x : ev) {
            Json r;
            r["k"] = x.k;
            r["sign"] = x.sign;
            r["value"] = x.value.decimal;
            r["lower"] = to_string(x.value.lower);
            r["upper"] = to_string(x.value.upper);
            rows.push_back(r);
        }
        j["rows"] = rows;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "k   sign  value (" << digits << " significant digits)\n";
        for (const auto& x : ev) {
            std::string k = std::to_string(x.k);
            std::cout << k << std::string(4 - k.size(), ' ') << (x.sign > 0 ? "+     " : "-     ") << x.value.decimal << "\n";
        }
    }
    return kOk;
}

int cmd_trace_set(long max, const std::string& format) {
    if (max < 2) throw InputError("--max must be at least 2");
    std::vector<Integer> s = trace_set(Integer(max));
    if (format == "json") {
        Json j;
        j["max"] = max;
        Json arr = Json::array();
        for (const auto& t : s) arr.push_back(t.get_str());
        j["set"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < s.size(); ++i) std::cout << (i ? " " : "") << s[i];
        std::cout << "\n";
    }
    return kOk;
}

int cmd_cross_validate(long max, const std::string& format) {
    if (max < 3) throw InputError("--max must be at least 3");
    bool certified = certify(5).passed();
    CrossValidationReport r = cross_validate(Integer(max), certified);
    if (format == "json") {
        std::cout << cross_validation_to_json(r).dump(2) << "\n";
    } else {
        for (const auto& row : r.rows) {
            if (!row.necessary && !row.closed_form) continue;
            std::cout << "tau = " << row.tau << ": " << (row.closed_form ? "in set" : "not in set") << ", "
                      << row.status() << (row.mismatch ? "  MISMATCH" : "") << "\n";
        }
        std::cout << "pipeline certified: " << (certified ? "yes" : "no") << "\n"
                  << "mismatches: " << r.mismatches() << "\n";
    }
    return r.passed() ? kOk : kCheckFailed;
}

int cmd_gram(const std::string& which, const std::string& format, const std::string& output) {
    LatticeFile f;
    if (which == "L1") {
        Isometry t = build_L1();
        f = {t.lattice().gram(), t.matrix()};
    } else if (which == "L2") {
        L2Data l2 = build_L2();
        f = {l2.twisted.lattice.gram(), l2.twisted.multiplication_by_zeta.matrix()};
    } else {
        K3Assembly k3 = assemble_k3();
        f = {k3.glued.ambient.gram(), k3.t.matrix()};
    }
    emit(lattice_document(f, format), output);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice computations for a K3 lattice isometry with a quadratic Salem factor"};
    app.require_subcommand(1);
    std::string format;

    auto* certify_cmd = app.add_subcommand("certify-k3", "build the rank-22 isometry and check every claim");

    std::string info_path;
    auto* info = app.add_subcommand("lattice-info", "invariants, glue group and torsion forms of a lattice file");
    info->add_option("file", info_path, "lattice file, '-' for stdin")->required();

    std::string glue1, glue2, glue_out;
    auto* glue_cmd = app.add_subcommand("glue", "glue two lattices along an equivariant anti-isometry");
    glue_cmd->add_option("file1", glue1)->required();
    glue_cmd->add_option("file2", glue2)->required();
    glue_cmd->add_option("-o,--output", glue_out, "write the glued lattice here");

    std::string twist_path, twist_poly, twist_out;
    auto* twist_cmd = app.add_subcommand("twist", "twist a lattice by A(t)");
    twist_cmd->add_option("file", twist_path)->required();
    twist_cmd->add_option("--poly", twist_poly, "coefficients of A, constant term first, comma-separated")->required();
    twist_cmd->add_option("-o,--output", twist_out);

    std::optional<int> table_digits;
    auto* table = app.add_subcommand("table1", "signs and values of the trace-form weight at the real embeddings");
    table->add_option("--digits", table_digits, "significant digits")->check(CLI::Range(1, 200));

    long trace_max = 200;
    auto* trace = app.add_subcommand("trace-set", "the closed-form trace set up to a bound");
    trace->add_option("--max", trace_max)->required();

    long cv_max = 200;
    auto* cv = app.add_subcommand("cross-validate", "closed form against necessary conditions plus witnesses");
    cv->add_option("--max", cv_max)->required();

    std::string which, gram_out;
    auto* gram = app.add_subcommand("gram", "emit an exact Gram matrix with its isometry");
    gram->add_option("--which", which)->required()->check(CLI::IsMember({"L1", "L2", "K3"}));
    gram->add_option("-o,--output", gram_out);

    for (auto* sub : {certify_cmd, info, glue_cmd, twist_cmd, table, trace, cv, gram})
        sub->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kBadInput;
    }

    auto fmt = [&](const char* fallback) { return format.empty() ? std::string(fallback) : format; };
    try {
        if (*certify_cmd) return cmd_certify(fmt("table"), default_digits());
        if (*info) return cmd_lattice_info(info_path, fmt("table"));
        if (*glue_cmd) return cmd_glue(glue1, glue2, fmt("json"), glue_out);
        if (*twist_cmd) return cmd_twist(twist_path, twist_poly, fmt("json"), twist_out);
        if (*table) return cmd_table1(table_digits ? *table_digits : default_digits(), fmt("table"));
        if (*trace) return cmd_trace_set(trace_max, fmt("table"));
        if (*cv) return cmd_cross_validate(cv_max, fmt("table"));
        if (*gram) return cmd_gram(which, fmt("json"), gram_out);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const LatticeError& e) {
        std::cerr << "invalid lattice: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kBadInput;
}
