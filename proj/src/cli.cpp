#include "sqf/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "sqf/curves.hpp"
#include "sqf/isotest.hpp"
#include "sqf/quadfield.hpp"
#include "sqf/sequences.hpp"

namespace sqf::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Report {
    Json json;
    std::string text;
    int status = kExitOk;
};

std::string dec(const BigInt& v) { return to_decimal(v); }

Json quad_json(const QuadInt& x) { return Json{{"a", dec(x.a())}, {"b", dec(x.b())}, {"d", dec(x.field().d())}}; }

Json point_json(const std::pair<BigInt, BigInt>& p) { return Json::array({dec(p.first), dec(p.second)}); }

Json rational_point_json(const RationalPoint& p) {
    if (p.infinity) return "O";
    return Json::array({p.x.get_str(), p.y.get_str()});
}

BigInt positive_arg(const RunConfig& cfg, std::size_t i, const char* what) {
    if (i >= cfg.args.size()) throw UsageError(std::string("missing argument: ") + what);
    try {
        BigInt v = parse_bigint(cfg.args[i]);
        if (v < 1) throw UsageError(std::string(what) + " must be a positive integer");
        return v;
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(what) + " must be a positive integer, got '" + cfg.args[i] + "'");
    }
}

BigInt index_arg(const RunConfig& cfg, std::size_t i, const char* what) {
    BigInt n = positive_arg(cfg, i, what);
    try {
        validate_index(n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return n;
}

void expect_args(const RunConfig& cfg, std::size_t count) {
    if (cfg.args.size() != count)
        throw UsageError(cfg.subcommand + " expects " + std::to_string(count) + " positional argument(s)");
}

Report cmd_search(const RunConfig& cfg) {
    expect_args(cfg, 0);
    const unsigned long limit = cfg.max_n.value_or(1000);
    if (limit < 2) throw UsageError("--max-n must be at least 2");
    const auto pairs = duplicate_search(limit, cfg.workers);
    Report r;
    Json list = Json::array();
    std::ostringstream text;
    for (const auto& [m, n] : pairs) {
        list.push_back(Json::array({std::to_string(m), std::to_string(n)}));
        text << "K_" << m << " = K_" << n << '\n';
    }
    text << pairs.size() << " pair(s) with 0 < m < n <= " << limit << '\n';
    r.json = Json{{"command", "search"}, {"max_n", std::to_string(limit)}, {"pairs", list}};
    r.text = text.str();
    return r;
}

Report cmd_iso(const RunConfig& cfg) {
    expect_args(cfg, 2);
    const BigInt m = index_arg(cfg, 0, "m");
    const BigInt n = index_arg(cfg, 1, "n");
    const IsoResult res = fields_equal(m, n);
    Report r;
    r.status = res.equal ? kExitOk : kExitNegative;
    r.json = Json{{"command", "iso"},
                  {"m", dec(m)},
                  {"n", dec(n)},
                  {"equal", res.equal},
                  {"stage", to_string(res.stage)},
                  {"d_m", dec(res.inv_m.d)},
                  {"x", dec(res.inv_m.y)},
                  {"d_n", dec(res.inv_n.d)},
                  {"y", dec(res.inv_n.y)},
                  {"alpha", res.alpha ? quad_json(*res.alpha) : Json(nullptr)},
                  {"witness", res.witness ? quad_json(*res.witness) : Json(nullptr)}};
    std::ostringstream text;
    text << (res.equal ? "equal" : "not equal") << '\n';
    text << "m = " << m << ": m^2 + 16 = " << res.inv_m.d << " * " << res.inv_m.y << "^2\n";
    text << "n = " << n << ": n^2 + 16 = " << res.inv_n.d << " * " << res.inv_n.y << "^2\n";
    if (res.alpha) text << "alpha = " << *res.alpha << '\n';
    if (res.witness) text << "witness: alpha = (" << *res.witness << ")^2\n";
    else text << "stage: " << to_string(res.stage) << '\n';
    r.text = text.str();
    return r;
}

Json cert_json(const UniquenessCertificate& c) {
    return Json{{"version", c.version}, {"kind", to_string(c.kind)}, {"n", dec(c.n)}, {"d", dec(c.d)},
                {"t", dec(c.t)},        {"r0", dec(c.r0)},             {"p", dec(c.p)}};
}

Report cmd_certify(const RunConfig& cfg, bool& wrote_out) {
    expect_args(cfg, 1);
    const BigInt n = index_arg(cfg, 0, "n");
    const IssueResult res = issue_certificate(n, cfg.prime_bound, cfg.index_cap, cfg.workers);
    Report r;
    r.status = res.ok() ? kExitOk : kExitNegative;
    r.json = Json{{"command", "certify"},
                  {"n", dec(n)},
                  {"prime_bound", std::to_string(cfg.prime_bound)},
                  {"index_cap", std::to_string(cfg.index_cap)},
                  {"issued", res.ok()},
                  {"failure", to_string(res.failure)},
                  {"reason", res.reason},
                  {"r0", res.r0 ? Json(std::to_string(*res.r0)) : Json(nullptr)},
                  {"certificate", res.certificate ? cert_json(*res.certificate) : Json(nullptr)}};
    std::ostringstream text;
    if (res.ok()) {
        const auto& c = *res.certificate;
        text << "issued " << to_string(c.kind) << " certificate for n = " << c.n << '\n';
        text << "d = " << c.d << ", t = " << c.t << ", r0 = " << c.r0 << ", p = " << c.p << '\n';
        text << to_json(c);
    } else {
        text << "no certificate for n = " << n << ": " << to_string(res.failure) << '\n' << res.reason << '\n';
    }
    r.text = text.str();
    if (res.ok() && !cfg.out.empty()) {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) throw UsageError("cannot write " + cfg.out);
        file << to_json(*res.certificate);
        wrote_out = true;
    }
    return r;
}

Report cmd_verify(const RunConfig& cfg) {
    expect_args(cfg, 1);
    std::ifstream file(cfg.args[0], std::ios::binary);
    if (!file) throw UsageError("cannot read certificate file " + cfg.args[0]);
    std::stringstream buf;
    buf << file.rdbuf();
    Report r;
    UniquenessCertificate cert;
    try {
        cert = certificate_from_json(buf.str());
    } catch (const CertificateFormatError& e) {
        r.status = kExitNegative;
        r.json = Json{{"command", "verify-cert"}, {"file", cfg.args[0]}, {"accepted", false}, {"format_error", e.what()}};
        r.text = std::string("reject\nformat error: ") + e.what() + '\n';
        return r;
    }
    const VerifyResult v = verify_certificate(cert);
    r.status = v.accepted ? kExitOk : kExitNegative;
    Json checks = Json::array();
    std::ostringstream text;
    text << (v.accepted ? "accept" : "reject") << '\n';
    for (const auto& c : v.transcript) {
        checks.push_back(Json{{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        text << (c.passed ? "  ok   " : "  FAIL ") << c.name << ": " << c.detail << '\n';
    }
    text << v.conclusion << '\n';
    r.json = Json{{"command", "verify-cert"}, {"file", cfg.args[0]},    {"accepted", v.accepted},
                  {"certificate", cert_json(cert)}, {"transcript", checks}, {"conclusion", v.conclusion}};
    r.text = text.str();
    return r;
}

Report cmd_hypotheses(const RunConfig& cfg) {
    expect_args(cfg, 1);
    const BigInt n = index_arg(cfg, 0, "n");
    const HypothesisReport h = theorem_hypotheses(n);
    Report r;
    r.json = Json{{"command", "hypotheses"},
                  {"n", dec(n)},
                  {"case", to_string(h.which)},
                  {"d", dec(h.d)},
                  {"y", dec(h.y)},
                  {"unit", quad_json(h.unit)},
                  {"trace", dec(h.trace)},
                  {"trace_parity", h.trace_odd ? "odd" : "even"},
                  {"unit_norm", h.unit_norm}};
    std::ostringstream text;
    text << "n = " << n << ": case " << to_string(h.which) << '\n';
    text << "n^2 + 16 = " << h.d << " * " << h.y << "^2\n";
    text << "fundamental unit " << h.unit << ", trace " << h.trace << " (" << (h.trace_odd ? "odd" : "even")
         << "), norm " << h.unit_norm << '\n';
    r.text = text.str();
    return r;
}

Report cmd_sequence(const RunConfig& cfg) {
    expect_args(cfg, 1);
    const BigInt t = positive_arg(cfg, 0, "t");
    const LucasParams params(t);
    Report r;
    Json rows = Json::array();
    std::ostringstream text;
    text << "t = " << t << ", t^2 + 4 = " << params.d() << " * " << params.z() << "^2\n";
    for (const auto& term : uv_terms(params, cfg.terms + 1)) {
        const std::string cls = term.j == 0 ? "-" : to_string(classify_square(term.u, params.d()));
        rows.push_back(Json{{"j", std::to_string(term.j)}, {"u", dec(term.u)}, {"v", dec(term.v)}, {"class", cls}});
        text << "j=" << term.j << " u=" << term.u << " v=" << term.v << " [" << cls << "]\n";
    }
    r.json = Json{{"command", "sequence"}, {"t", dec(t)}, {"d", dec(params.d())}, {"z", dec(params.z())}, {"terms", rows}};
    r.text = text.str();
    return r;
}

Report cmd_curves(const RunConfig& cfg) {
    expect_args(cfg, 1);
    const BigInt t = positive_arg(cfg, 0, "t");
    const LucasParams params(t);
    const BigInt& d = params.d();
    const auto c1 = QuarticCurveSpec::c1(t);
    const auto c2 = QuarticCurveSpec::c2(t, d);
    const auto e1 = WeierstrassCurveSpec::e1(t);
    const auto e2 = WeierstrassCurveSpec::e2(t, d);
    const auto e3 = WeierstrassCurveSpec::e3(t);
    const auto pts1 = integer_points_search(c1, cfg.x_bound, cfg.workers);
    const auto pts2 = integer_points_search(c2, cfg.x_bound, cfg.workers);
    const auto bij = square_point_bijection(t, d, cfg.terms, cfg.x_bound);

    std::ostringstream text;
    Json specs = Json::array();
    for (const auto& s : {c1, c2}) {
        specs.push_back(Json{{"curve", to_string(s.kind)}, {"A", dec(s.A)}, {"B", dec(s.B)}});
        text << to_string(s.kind) << ": y^2 = " << s.A << " x^4 - 4\n";
    }
    for (const auto& s : {e1, e2, e3}) {
        specs.push_back(Json{{"curve", to_string(s.kind)}, {"a4", dec(s.a4)}});
        text << to_string(s.kind) << ": Y^2 = X^3 - " << BigInt(-s.a4) << " X\n";
    }

    Json images = Json::array();
    auto push_images = [&](const std::vector<std::pair<BigInt, BigInt>>& pts, int which) {
        for (const auto& p : pts) {
            const auto pt = RationalPoint::affine(Rational(p.first), Rational(p.second));
            const auto img = phi_map(which, t, d, pt);
            Json row{{"curve", which == 1 ? "C1" : "C2"}, {"point", point_json(p)}, {"phi", rational_point_json(img)}};
            text << (which == 1 ? "C1 " : "C2 ") << pt.to_string() << " -> phi" << which << " " << img.to_string();
            if (which == 2) {
                const auto psi = psi_map(t, d, img);
                row["psi"] = rational_point_json(psi);
                text << " -> psi " << psi.to_string();
            }
            text << '\n';
            images.push_back(row);
        }
    };
    text << "integer points with 0 <= x <= " << cfg.x_bound << ":\n";
    push_images(pts1, 1);
    push_images(pts2, 2);

    Json corr = Json::array();
    text << "correspondence (" << bij.claim << ", omega fundamental: " << (bij.omega_fundamental ? "yes" : "no")
         << "):\n";
    for (const auto& e : bij.from_sequence) {
        corr.push_back(Json{{"j", std::to_string(e.j)}, {"class", to_string(e.cls)}, {"curve", to_string(e.curve)},
                            {"x", dec(e.x)}, {"y", dec(e.y)}});
        text << "  u_" << e.j << " [" << to_string(e.cls) << "] <-> " << to_string(e.curve) << " (" << e.x << ", " << e.y
             << ")\n";
    }
    for (const auto& m : bij.mismatches) text << "  mismatch: " << m << '\n';

    const bool torsion = torsion_preconditions(t, d);
    text << "torsion precondition (4 d^2 (t^2+4) not a square): " << (torsion ? "holds" : "fails") << '\n';
    text << "root numbers: w(E1) = " << root_number_E1(t) << ", w(E3) = " << root_number_E3(t) << '\n';

    Report r;
    r.json = Json{{"command", "curves"},
                  {"t", dec(t)},
                  {"d", dec(d)},
                  {"z", dec(params.z())},
                  {"x_bound", std::to_string(cfg.x_bound)},
                  {"specs", specs},
                  {"points", images},
                  {"correspondence",
                   Json{{"claim", bij.claim},
                        {"omega_fundamental", bij.omega_fundamental},
                        {"max_index", std::to_string(cfg.terms)},
                        {"pairs", corr},
                        {"mismatches", bij.mismatches},
                        {"exact_match", bij.exact_match}}},
                  {"torsion_precondition", torsion},
                  {"root_numbers", Json{{"E1", root_number_E1(t)}, {"E3", root_number_E3(t)}}}};
    r.text = text.str();
    return r;
}

Report cmd_root_number(const RunConfig& cfg) {
    std::vector<BigInt> ts;
    for (std::size_t i = 0; i < cfg.args.size(); ++i) ts.push_back(positive_arg(cfg, i, "t"));
    if (ts.empty()) {
        if (!cfg.max_n) throw UsageError("root-number needs t values or --max-n");
        for (unsigned long t = 1; t <= *cfg.max_n; ++t) ts.emplace_back(t);
    }
    Report r;
    Json rows = Json::array();
    std::ostringstream text;
    bool all_ok = true;
    for (const auto& t : ts) {
        Json row{{"t", dec(t)}, {"E1", root_number_E1(t)}, {"E3", root_number_E3(t)}};
        text << "t=" << t << " w(E1)=" << root_number_E1(t) << " w(E3)=" << root_number_E3(t);
        if (mod_floor(t, 8) == 0) {
            const auto bs = bs_derivation_check(t);
            all_ok = all_ok && bs.passed();
            row["derivation"] = Json{{"r", dec(bs.r)},
                                     {"s", dec(bs.s)},
                                     {"w_infinity", bs.w_infinity},
                                     {"w_2", bs.w_2},
                                     {"w_odd", bs.w_odd},
                                     {"global", bs.global},
                                     {"passed", bs.passed()},
                                     {"discrepancies", bs.discrepancies}};
            text << " r=" << bs.r << " s=" << bs.s << " [" << (bs.passed() ? "derivation ok" : "DISCREPANCY") << "]";
        }
        text << '\n';
        rows.push_back(row);
    }
    r.status = all_ok ? kExitOk : kExitNegative;
    r.json = Json{{"command", "root-number"}, {"rows", rows}};
    r.text = text.str();
    return r;
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"search", "iso",      "certify", "verify-cert",
                                                "hypotheses", "sequence", "curves",  "root-number"};
    return names;
}

std::string synopsis() {
    return "usage: sqf <subcommand> [args] [options]\n"
           "  search --max-n N          list m < n <= N with K_m = K_n\n"
           "  iso M N                   decide K_M = K_N\n"
           "  certify N [--out FILE]    issue a uniqueness certificate\n"
           "  verify-cert FILE          verify a certificate file\n"
           "  hypotheses N              classify N against the uniqueness hypotheses\n"
           "  sequence T --terms J      u_j, v_j for j <= J with square classes\n"
           "  curves T --x-bound X      curve points, maps and correspondence\n"
           "  root-number [T...]        root numbers of E1 and E3 (or --max-n N for 1..N)\n"
           "options: --max-n --prime-bound --index-cap --terms --x-bound --format {text,json} --out --workers\n";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    static const std::map<std::string, std::function<Report(const RunConfig&, bool&)>> table{
        {"search", [](const RunConfig& c, bool&) { return cmd_search(c); }},
        {"iso", [](const RunConfig& c, bool&) { return cmd_iso(c); }},
        {"certify", [](const RunConfig& c, bool& w) { return cmd_certify(c, w); }},
        {"verify-cert", [](const RunConfig& c, bool&) { return cmd_verify(c); }},
        {"hypotheses", [](const RunConfig& c, bool&) { return cmd_hypotheses(c); }},
        {"sequence", [](const RunConfig& c, bool&) { return cmd_sequence(c); }},
        {"curves", [](const RunConfig& c, bool&) { return cmd_curves(c); }},
        {"root-number", [](const RunConfig& c, bool&) { return cmd_root_number(c); }},
    };
    const auto it = table.find(config.subcommand);
    if (it == table.end()) {
        err << "unknown subcommand '" << config.subcommand << "'\n" << synopsis();
        return kExitUsage;
    }
    try {
        bool wrote_out = false;
        const Report report = it->second(config, wrote_out);
        const std::string body = config.format == Format::Json ? report.json.dump(2) + "\n" : report.text;
        if (!config.out.empty() && !wrote_out) {
            std::ofstream file(config.out, std::ios::binary);
            if (!file) {
                err << "cannot write " << config.out << '\n';
                return kExitUsage;
            }
            file << body;
        } else {
            out << body;
        }
        return report.status;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n' << synopsis();
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n' << synopsis();
        return kExitUsage;
    }
}

}  // namespace sqf::cli
