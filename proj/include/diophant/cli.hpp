#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "approx.hpp"
#include "errors.hpp"
#include "number_theory.hpp"
#include "pell.hpp"
#include "rational.hpp"
#include "real_oracle.hpp"
#include "siegel.hpp"
#include "witness.hpp"
#include "zeta.hpp"

namespace diophant {
namespace cli {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json interval_json(const DyadicInterval& a) {
    return Json::array({to_string(a.lo), to_string(a.hi)});
}

inline Json int_vec_json(const std::vector<BigInt>& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_string(x));
    return j;
}

inline Json interval_vec_json(const std::vector<DyadicInterval>& v) {
    Json j = Json::array();
    for (const auto& a : v) j.push_back(interval_json(a));
    return j;
}

inline unsigned long to_ulong(const BigInt& z, const std::string& what) {
    if (z < 0 || !mpz_fits_ulong_p(z.get_mpz_t()))
        throw InvalidArgument(what + " is out of range");
    return mpz_get_ui(z.get_mpz_t());
}

inline unsigned long parse_ulong(const std::string& s, const std::string& what) {
    return to_ulong(parse_integer(s), what);
}

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline CantorSeq cantor_preset(const std::string& preset) {
    std::vector<std::string> parts = split(preset, ':');
    if (parts.empty() || parts[0].empty())
        throw InvalidArgument("cantor: empty base preset");
    std::size_t used = 1;
    std::function<BigInt(unsigned long)> g;
    bool unbounded = false;
    if (parts[0] == "factorial") {
        g = [](unsigned long n) { return BigInt(n); };
        unbounded = true;
    } else if (parts[0] == "constant" || parts[0] == "geometric") {
        if (parts.size() < 2) throw InvalidArgument("cantor: " + parts[0] + " needs a base");
        BigInt k = parse_integer(parts[1]);
        if (k < 2) throw InvalidArgument("cantor: base must be >= 2");
        used = 2;
        if (parts[0] == "constant") {
            g = [k](unsigned long) { return k; };
        } else {
            g = [k](unsigned long n) { return pow_int(k, n); };
            unbounded = true;
        }
    } else {
        throw InvalidArgument("cantor: unknown base preset " + parts[0]);
    }
    std::function<int(unsigned long)> z = [](unsigned long) { return 1; };
    if (parts.size() > used) {
        if (parts.size() > used + 1) throw InvalidArgument("cantor: trailing preset parts");
        if (parts[used] == "alternating") {
            z = [](unsigned long n) { return n % 2 == 1 ? 1 : 0; };
        } else if (parts[used] != "ones") {
            throw InvalidArgument("cantor: unknown digit preset " + parts[used]);
        }
    }
    return {std::move(g), std::move(z), unbounded, "cantor:" + preset};
}

// rat:p/q | sqrt:c | e | zeta2 | zeta3 | cantor:<preset>
inline RealOracle parse_real(const std::string& token) {
    std::string s = trim(token);
    if (s == "e") return RealOracle::e();
    if (s == "zeta2") return RealOracle::zeta2();
    if (s == "zeta3") return RealOracle::zeta3();
    if (s.rfind("rat:", 0) == 0) return RealOracle::rational(parse_rational(s.substr(4)));
    if (s.rfind("sqrt:", 0) == 0) return RealOracle::sqrt_of(parse_integer(s.substr(5)));
    if (s.rfind("cantor:", 0) == 0) return RealOracle::cantor(cantor_preset(s.substr(7)));
    throw InvalidArgument("unknown real literal: " + s);
}

inline std::string read_arg_or_file(const std::string& s) {
    if (!s.empty() && s[0] == '@') {
        std::ifstream in(s.substr(1));
        if (!in) throw InvalidArgument("cannot read " + s.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return s;
}

// rows split on ';' or newlines, entries on ','
inline std::vector<std::vector<std::string>> matrix_cells(const std::string& arg) {
    std::string text = read_arg_or_file(arg);
    std::replace(text.begin(), text.end(), '\n', ';');
    std::vector<std::vector<std::string>> rows;
    for (const std::string& row : split(text, ';')) {
        if (trim(row).empty()) continue;
        std::vector<std::string> cells;
        for (const std::string& cell : split(row, ',')) {
            std::string c = trim(cell);
            if (c.empty()) throw InvalidArgument("matrix has an empty entry");
            cells.push_back(c);
        }
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw InvalidArgument("matrix is empty");
    return rows;
}

inline OracleMatrix parse_real_matrix(const std::string& arg) {
    OracleMatrix m;
    for (const auto& row : matrix_cells(arg)) {
        std::vector<RealOracle> r;
        for (const auto& cell : row) r.push_back(parse_real(cell));
        m.push_back(std::move(r));
    }
    return m;
}

inline std::vector<RealOracle> parse_real_list(const std::string& arg) {
    OracleMatrix m = parse_real_matrix(arg);
    if (m.size() != 1) throw InvalidArgument("expected a single row of reals");
    return m[0];
}

inline IntLinearSystem parse_int_matrix(const std::string& arg) {
    IntLinearSystem sys;
    for (const auto& row : matrix_cells(arg)) {
        std::vector<BigInt> r;
        for (const auto& cell : row) r.push_back(parse_integer(cell));
        sys.entries.push_back(std::move(r));
    }
    sys.rows = sys.entries.size();
    sys.cols = sys.entries[0].size();
    return sys;
}

inline std::string error_name(const std::exception& e) {
    if (dynamic_cast<const PrecisionExhausted*>(&e)) return "precision-exhausted";
    if (dynamic_cast<const InfeasibleEnumeration*>(&e)) return "infeasible-enumeration";
    if (dynamic_cast<const CertificationFailed*>(&e)) return "certification-failed";
    if (dynamic_cast<const IrrationalRequired*>(&e)) return "irrational-required";
    if (dynamic_cast<const NotCoprime*>(&e)) return "not-coprime";
    if (dynamic_cast<const NonTrivialCase*>(&e)) return "non-trivial-case";
    if (dynamic_cast<const SquareInput*>(&e)) return "square-input";
    if (dynamic_cast<const DimensionError*>(&e)) return "dimension-error";
    if (dynamic_cast<const DegenerateBound*>(&e)) return "degenerate-bound";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid-argument";
    if (dynamic_cast<const Error*>(&e)) return "internal-error";
    return "invalid-argument";
}

inline int exit_code(const std::exception& e) {
    if (dynamic_cast<const PrecisionExhausted*>(&e) ||
        dynamic_cast<const InfeasibleEnumeration*>(&e) ||
        dynamic_cast<const CertificationFailed*>(&e))
        return 2;
    return 1;
}

inline void seed_limits_from_env() {
    if (const char* v = std::getenv("DIOPHANT_MAX_PREC_BITS"))
        limits().max_precision_bits = parse_ulong(v, "DIOPHANT_MAX_PREC_BITS");
    if (const char* v = std::getenv("DIOPHANT_ENUM_CAP")) {
        BigInt z = parse_integer(v);
        if (z < 1 || !mpz_fits_ulong_p(z.get_mpz_t()))
            throw InvalidArgument("DIOPHANT_ENUM_CAP is out of range");
        limits().enumeration_cap = mpz_get_ui(z.get_mpz_t());
    }
}

struct Outcome {
    Json payload = Json::object();
    std::string status = "certified";
    std::string summary;
};

}  // namespace detail

// Runs one command line against the library and prints a JSON envelope on
// out; human-readable notes and timing go to err only, so out stays
// byte-identical for identical argv and environment.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    auto start = std::chrono::steady_clock::now();
    Limits saved = limits();
    struct Restore {
        Limits s;
        ~Restore() { limits() = s; }
    } restore{saved};

    CLI::App app{"certified rational approximation and irrationality toolkit"};
    app.name("diophant");
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string opt_prec, opt_cap;
    app.add_option("--max-prec-bits", opt_prec, "refinement precision ceiling in bits");
    app.add_option("--enum-cap", opt_cap, "enumeration budget ceiling");

    std::string arg_real, arg_n, arg_list, arg_matrix, arg_count, arg_a, arg_b, arg_c;
    std::string arg_x, arg_y, arg_eps, arg_scan = "1000", arg_grid = "0";

    CLI::App* c_approx = app.add_subcommand("approx", "best single fraction below a denominator cap");
    c_approx->add_option("real", arg_real, "target value")->required();
    c_approx->add_option("n", arg_n, "denominator cap N")->required();

    CLI::App* c_simul = app.add_subcommand("simul", "one denominator for several targets");
    c_simul->add_option("reals", arg_list, "comma-separated targets")->required();
    c_simul->add_option("n", arg_n, "parameter N")->required();

    CLI::App* c_linform = app.add_subcommand("linform", "small integer combination of several targets");
    c_linform->add_option("reals", arg_list, "comma-separated coefficients")->required();
    c_linform->add_option("n", arg_n, "parameter N")->required();

    CLI::App* c_multidim = app.add_subcommand("multidim", "joint approximation for a matrix of targets");
    c_multidim->add_option("matrix", arg_matrix, "rows split by ';', entries by ','")->required();
    c_multidim->add_option("n", arg_n, "parameter N")->required();

    CLI::App* c_small = app.add_subcommand("smallforms", "small values of M forms in L variables");
    c_small->add_option("matrix", arg_matrix, "rows split by ';', entries by ','")->required();
    c_small->add_option("n", arg_n, "parameter N")->required();

    CLI::App* c_stream = app.add_subcommand("stream", "strictly improving fraction stream");
    c_stream->add_option("real", arg_real, "irrational target")->required();
    c_stream->add_option("count", arg_count, "number of fractions")->required();

    CLI::App* c_pell = app.add_subcommand("pell", "fundamental solution of x^2 - c y^2 = 1");
    c_pell->add_option("c", arg_c, "coefficient c")->required();

    CLI::App* c_powers = app.add_subcommand("pell-powers", "powers of a Pell solution");
    c_powers->add_option("x", arg_x, "base x")->required();
    c_powers->add_option("y", arg_y, "base y")->required();
    c_powers->add_option("c", arg_c, "coefficient c")->required();
    c_powers->add_option("count", arg_count, "number of powers")->required();

    CLI::App* c_lineq = app.add_subcommand("lineq", "solve a n - b p = 1 by approximation");
    c_lineq->add_option("a", arg_a, "coefficient a")->required();
    c_lineq->add_option("b", arg_b, "modulus b >= 1")->required();

    CLI::App* c_witness = app.add_subcommand("witness", "irrationality witness pair, or the rational obstruction scan");
    c_witness->add_option("real", arg_real, "target value")->required();
    c_witness->add_option("eps", arg_eps, "positive threshold")->required();
    c_witness->add_option("--scan-limit", arg_scan, "x range for the rational scan");

    CLI::App* c_cantor = app.add_subcommand("cantor", "partial-sum gap certificate for a Cantor series");
    c_cantor->add_option("real", arg_real, "cantor:<preset> value")->required();
    c_cantor->add_option("terms", arg_n, "partial-sum length N")->required();

    CLI::App* c_zeta2 = app.add_subcommand("zeta2", "integer pair a zeta(2) + b from the kernel moments");
    c_zeta2->add_option("n", arg_n, "polynomial degree")->required();

    CLI::App* c_zeta3 = app.add_subcommand("zeta3", "integer pair a zeta(3) + b from the log kernel moments");
    c_zeta3->add_option("n", arg_n, "polynomial degree")->required();

    CLI::App* c_zb2 = app.add_subcommand("zeta2-bound", "certified envelope for the zeta(2) pair");
    c_zb2->add_option("n", arg_n, "polynomial degree")->required();
    c_zb2->add_option("--grid", arg_grid, "kernel scan grid (0 skips the scan)");

    CLI::App* c_zb3 = app.add_subcommand("zeta3-bound", "certified envelope for the zeta(3) pair");
    c_zb3->add_option("n", arg_n, "polynomial degree")->required();
    c_zb3->add_option("--grid", arg_grid, "kernel scan grid (0 skips the scan)");

    CLI::App* c_siegel = app.add_subcommand("siegel", "small integer kernel vector of an integer system");
    c_siegel->add_option("matrix", arg_matrix, "rows split by ';', entries by ','")->required();

    CLI::App* c_lcm = app.add_subcommand("lcm-upto", "lcm(1..n)");
    c_lcm->add_option("n", arg_n, "upper limit")->required();

    try {
        std::vector<std::string> rev(argv.rbegin(), argv.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help()) << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        Json envelope;
        envelope["command"] = "";
        envelope["arguments"] = Json::object();
        envelope["status"] = "error";
        envelope["error"] = {{"type", "usage"}, {"message", e.what()}};
        out << envelope.dump(2) << "\n";
        err << "usage error: " << e.what() << "\n";
        return 1;
    }
    if (app.get_subcommands().empty()) {
        out << app.help() << std::flush;
        return 0;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    Json arguments = Json::object();
    Json envelope;
    envelope["command"] = cmd;
    detail::Outcome res;
    int code = 0;
    try {
        detail::seed_limits_from_env();
        if (!opt_prec.empty())
            limits().max_precision_bits = detail::parse_ulong(opt_prec, "--max-prec-bits");
        if (!opt_cap.empty()) {
            BigInt z = parse_integer(opt_cap);
            if (z < 1 || !mpz_fits_ulong_p(z.get_mpz_t()))
                throw InvalidArgument("--enum-cap is out of range");
            limits().enumeration_cap = mpz_get_ui(z.get_mpz_t());
        }

        if (cmd == "approx") {
            arguments["real"] = arg_real;
            arguments["n"] = arg_n;
            RealOracle alpha = detail::parse_real(arg_real);
            BigInt N = parse_integer(arg_n);
            ApproxResult r = dirichlet_approx(alpha, N);
            res.payload["n"] = to_string(r.n);
            res.payload["p"] = to_string(r.p);
            res.payload["fraction"] = to_string(make_rational(r.p, r.n));
            res.payload["error"] = detail::interval_json(r.certified_error);
            res.payload["error_decimal"] = decimal_string(abs_of(r.certified_error).hi);
            res.payload["n_limit"] = to_string(r.n_limit);
            res.summary = "n=" + to_string(r.n) + " p=" + to_string(r.p) + " |n*alpha-p| <= " +
                          decimal_string(abs_of(r.certified_error).hi);
        } else if (cmd == "simul" || cmd == "linform" || cmd == "multidim") {
            if (cmd == "multidim")
                arguments["matrix"] = arg_matrix;
            else
                arguments["reals"] = arg_list;
            arguments["n"] = arg_n;
            BigInt N = parse_integer(arg_n);
            MultiApproxResult r =
                cmd == "simul"      ? simultaneous_approx(detail::parse_real_list(arg_list), N)
                : cmd == "linform"  ? linear_form_approx(detail::parse_real_list(arg_list), N)
                                    : multidim_approx(detail::parse_real_matrix(arg_matrix), N);
            res.payload["n"] = detail::int_vec_json(r.n);
            res.payload["p"] = detail::int_vec_json(r.p);
            res.payload["errors"] = detail::interval_vec_json(r.certified_errors);
            res.payload["coeff_bound"] = to_string(r.coeff_bound);
            res.payload["error_bound"] = to_string(r.error_bound);
            res.payload["n_limit"] = to_string(r.n_limit);
            res.summary = cmd + ": coefficients within " + to_string(r.coeff_bound) +
                          ", every error below " + to_string(r.error_bound);
        } else if (cmd == "smallforms") {
            arguments["matrix"] = arg_matrix;
            arguments["n"] = arg_n;
            BigInt N = parse_integer(arg_n);
            LinearFormResult r = small_linear_forms(detail::parse_real_matrix(arg_matrix), N);
            res.payload["x"] = detail::int_vec_json(r.x);
            res.payload["values"] = detail::interval_vec_json(r.certified_values);
            res.payload["value_bound"] = detail::interval_json(r.value_bound);
            res.payload["height_bound"] = to_string(r.height_bound);
            res.payload["n_limit"] = to_string(r.n_limit);
            res.summary = "smallforms: height within " + to_string(r.height_bound);
        } else if (cmd == "stream") {
            arguments["real"] = arg_real;
            arguments["count"] = arg_count;
            RealOracle alpha = detail::parse_real(arg_real);
            unsigned long count = detail::parse_ulong(arg_count, "count");
            if (count < 1) throw InvalidArgument("stream: count must be >= 1");
            ApproxStream stream(alpha);
            Json items = Json::array();
            std::string last;
            for (unsigned long i = 0; i < count; ++i) {
                ApproxStream::Item item = stream.next();
                Json j;
                j["fraction"] = to_string(item.fraction);
                j["error"] = detail::interval_json(item.certified_error);
                j["n_limit"] = to_string(item.n_limit);
                items.push_back(std::move(j));
                last = to_string(item.fraction);
            }
            res.payload["items"] = std::move(items);
            res.summary = "stream: reached " + last;
        } else if (cmd == "pell") {
            arguments["c"] = arg_c;
            BigInt c = parse_integer(arg_c);
            if (c < 2 || is_perfect_square(c)) {
                TrivialPellSolutions t = solve_pell_trivial(c);
                res.payload["kind"] = "trivial";
                Json sols = Json::array();
                for (const auto& [x, y] : t.solutions)
                    sols.push_back(Json::array({to_string(x), to_string(y)}));
                res.payload["solutions"] = std::move(sols);
                res.payload["y_parametric"] = t.y_parametric;
                res.summary = "pell: trivial case";
            } else {
                PellCertificate r = solve_pell(c);
                res.payload["kind"] = "fundamental";
                res.payload["x"] = to_string(r.fundamental.x);
                res.payload["y"] = to_string(r.fundamental.y);
                res.payload["convergents_scanned"] = r.convergents_scanned;
                res.payload["residue_min"] = to_string(r.residue_min);
                res.payload["residue_max"] = to_string(r.residue_max);
                res.payload["residues_in_range"] = r.residues_in_range;
                if (r.class_unit) {
                    res.payload["class_unit"] = Json::array(
                        {to_string(r.class_unit->a), to_string(r.class_unit->b)});
                    res.payload["class_unit_power"] = *r.class_unit_power;
                }
                res.summary = "pell: x=" + to_string(r.fundamental.x) +
                              " y=" + to_string(r.fundamental.y);
            }
        } else if (cmd == "pell-powers") {
            arguments["x"] = arg_x;
            arguments["y"] = arg_y;
            arguments["c"] = arg_c;
            arguments["count"] = arg_count;
            PellSolution base{parse_integer(arg_x), parse_integer(arg_y), parse_integer(arg_c)};
            unsigned long count = detail::parse_ulong(arg_count, "count");
            Json sols = Json::array();
            for (const PellSolution& s : pell_powers(base, count))
                sols.push_back(Json::array({to_string(s.x), to_string(s.y)}));
            res.payload["solutions"] = std::move(sols);
            res.summary = "pell-powers: " + std::to_string(count) + " solutions";
        } else if (cmd == "lineq") {
            arguments["a"] = arg_a;
            arguments["b"] = arg_b;
            UnitLinearSolution r = solve_unit_linear(parse_integer(arg_a), parse_integer(arg_b));
            res.payload["n"] = to_string(r.n);
            res.payload["p"] = to_string(r.p);
            res.summary = "lineq: n=" + to_string(r.n) + " p=" + to_string(r.p);
        } else if (cmd == "witness") {
            arguments["real"] = arg_real;
            arguments["eps"] = arg_eps;
            arguments["scan_limit"] = arg_scan;
            RealOracle alpha = detail::parse_real(arg_real);
            if (alpha.is_rational()) {
                ExactRational v = alpha.rational_value();
                BigInt X = parse_integer(arg_scan);
                ObstructionReport rep =
                    rational_obstruction(v.get_num(), v.get_den(), X);
                res.status = "report-only";
                res.payload["threshold"] = to_string(rep.threshold);
                res.payload["x_limit"] = to_string(rep.x_limit);
                res.payload["pairs_checked"] = to_string(rep.pairs_checked);
                Json viols = Json::array();
                for (const auto& [x, y] : rep.violations)
                    viols.push_back(Json::array({to_string(x), to_string(y)}));
                res.payload["violations"] = std::move(viols);
                res.summary = "witness: rational target, no pair beats 1/b on the scanned range";
            } else {
                IrrationalityWitness w = find_witness(alpha, parse_rational(arg_eps));
                res.payload["x"] = to_string(w.x);
                res.payload["y"] = to_string(w.y);
                res.payload["value"] = detail::interval_json(w.certified_value);
                res.payload["value_decimal"] = decimal_string(abs_of(w.certified_value).hi);
                res.summary = "witness: x=" + to_string(w.x) + " y=" + to_string(w.y);
            }
        } else if (cmd == "cantor") {
            arguments["real"] = arg_real;
            arguments["terms"] = arg_n;
            std::string s = detail::trim(arg_real);
            if (s.rfind("cantor:", 0) != 0)
                throw InvalidArgument("cantor: the target must be a cantor:<preset> literal");
            CantorSeq seq = detail::cantor_preset(s.substr(7));
            unsigned long terms = detail::parse_ulong(arg_n, "terms");
            CantorPartials r = cantor_partials(seq, terms);
            res.payload["p"] = to_string(r.p);
            res.payload["g"] = to_string(r.g);
            res.payload["bound"] = to_string(r.bound);
            res.payload["gap"] = detail::interval_json(r.certified_gap);
            res.payload["gap_decimal"] = decimal_string(r.certified_gap.hi);
            res.summary = "cantor: 0 < " + to_string(r.g) + "*alpha - " + to_string(r.p) +
                          " <= " + to_string(r.bound);
        } else if (cmd == "zeta2" || cmd == "zeta3") {
            arguments["n"] = arg_n;
            unsigned long n = detail::parse_ulong(arg_n, "n");
            ZetaWitness w = cmd == "zeta2" ? zeta2_witness(n) : zeta3_witness(n);
            res.payload["alpha"] = to_string(w.alpha);
            res.payload["beta"] = to_string(w.beta);
            res.payload["v"] = to_string(w.v);
            res.payload["a"] = to_string(w.a);
            res.payload["b"] = to_string(w.b);
            DyadicInterval J = witness_form_interval(w, 128);
            res.payload["form"] = detail::interval_json(J);
            res.payload["form_decimal"] = decimal_string(abs_of(J).hi);
            res.summary = cmd + ": a=" + to_string(w.a) + " b=" + to_string(w.b);
        } else if (cmd == "zeta2-bound" || cmd == "zeta3-bound") {
            arguments["n"] = arg_n;
            arguments["grid"] = arg_grid;
            unsigned long n = detail::parse_ulong(arg_n, "n");
            unsigned long grid = detail::parse_ulong(arg_grid, "--grid");
            BoundCheck c = cmd == "zeta2-bound" ? check_zeta2_bound(n) : check_zeta3_bound(n);
            res.payload["positive"] = c.positive;
            res.payload["within_bound"] = c.within_bound;
            res.payload["lhs"] = detail::interval_json(c.lhs);
            res.payload["rhs"] = detail::interval_json(c.rhs);
            res.payload["v_power_ok"] = c.v_power_ok;
            res.payload["majorant_relation"] = c.majorant_relation;
            res.payload["bits_used"] = c.bits_used;
            if (grid > 0) {
                KernelMaxReport k =
                    cmd == "zeta2-bound" ? kernel2_report(grid) : kernel3_report(grid);
                Json scan;
                scan["status"] = "report-only";
                scan["grid"] = k.grid;
                Json at = Json::array();
                for (const auto& q : k.argmax) at.push_back(to_string(q));
                scan["argmax"] = std::move(at);
                scan["best_value"] = to_string(k.best_value);
                scan["best_decimal"] = decimal_string(k.best_value);
                scan["within_bound"] = k.within_bound;
                scan["bound"] = detail::interval_json(k.bound_enclosure);
                scan["max_enclosure"] = detail::interval_json(k.max_enclosure);
                res.payload["kernel_scan"] = std::move(scan);
            }
            res.summary = cmd + ": positive=" + (c.positive ? "yes" : "no") +
                          " within_bound=" + (c.within_bound ? "yes" : "no");
            if (!c.positive || !c.within_bound)
                throw CertificationFailed(cmd + ": bound certification failed");
        } else if (cmd == "siegel") {
            arguments["matrix"] = arg_matrix;
            IntLinearSystem sys = detail::parse_int_matrix(arg_matrix);
            SiegelSolution r = siegel_solve(sys);
            res.payload["x"] = detail::int_vec_json(r.x);
            res.payload["bound"] = to_string(r.bound);
            res.payload["n"] = to_string(r.n);
            bool zero = diophant::detail::all_zero(diophant::detail::apply_system(sys, r.x));
            res.payload["residual_zero"] = zero;
            if (!zero) throw Error("siegel: emitted vector is not a solution");
            res.summary = "siegel: height within " + to_string(r.bound);
        } else if (cmd == "lcm-upto") {
            arguments["n"] = arg_n;
            unsigned long n = detail::parse_ulong(arg_n, "n");
            res.payload["value"] = to_string(lcm_upto(n));
            res.summary = "lcm(1.." + std::to_string(n) + ")";
        }

        envelope["arguments"] = arguments;
        envelope["status"] = res.status;
        envelope["payload"] = res.payload;
    } catch (const std::exception& e) {
        envelope["arguments"] = arguments;
        envelope["status"] = "error";
        envelope["error"] = {{"type", detail::error_name(e)}, {"message", e.what()}};
        res.summary = std::string("error: ") + e.what();
        code = detail::exit_code(e);
    }

    out << envelope.dump(2) << "\n";
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    err << res.summary << "\n";
    err << "elapsed_ms " << ms << "\n";
    return code;
}

}  // namespace cli
}  // namespace diophant
