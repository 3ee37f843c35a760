#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sqf/certify.hpp"
#include "sqf/cli.hpp"
#include "sqf/curves.hpp"
#include "sqf/isotest.hpp"

namespace py = pybind11;

// Python int <-> mpz_class through the decimal representation.
namespace pybind11::detail {
template <>
struct type_caster<mpz_class> {
    PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        const auto text = py::str(src).cast<std::string>();
        return value.set_str(text, 10) == 0;
    }

    static handle cast(const mpz_class& v, return_value_policy, handle) {
        return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    }
};
}  // namespace pybind11::detail

namespace {

py::dict quad(const sqf::QuadInt& x) {
    py::dict out;
    out["a"] = x.a();
    out["b"] = x.b();
    out["d"] = x.field().d();
    return out;
}

py::dict cert_dict(const sqf::UniquenessCertificate& c) {
    py::dict out;
    out["version"] = c.version;
    out["kind"] = sqf::to_string(c.kind);
    out["n"] = c.n;
    out["d"] = c.d;
    out["t"] = c.t;
    out["r0"] = c.r0;
    out["p"] = c.p;
    return out;
}

// Translates library argument errors into ValueError.
template <class F>
auto guarded(F f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw py::value_error(e.what());
    } catch (const std::domain_error& e) {
        throw py::value_error(e.what());
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simplest quartic fields: equality tests, uniqueness certificates, sequences and curves";

    py::register_exception<sqf::CertificateFormatError>(m, "CertificateFormatError", PyExc_ValueError);

    m.def("quad_invariant", [](const mpz_class& n) {
        return guarded([&] {
            const auto q = sqf::quad_invariant(n);
            return py::make_tuple(q.d, q.y);
        });
    }, "(d, y) with n^2 + 16 = d y^2, d squarefree");

    m.def("fields_equal", [](const mpz_class& a, const mpz_class& b) {
        return guarded([&] {
            const auto r = sqf::fields_equal(a, b);
            py::dict out;
            out["equal"] = r.equal;
            out["stage"] = sqf::to_string(r.stage);
            out["d_m"] = r.inv_m.d;
            out["d_n"] = r.inv_n.d;
            out["alpha"] = r.alpha ? py::object(quad(*r.alpha)) : py::none();
            out["witness"] = r.witness ? py::object(quad(*r.witness)) : py::none();
            return out;
        });
    });

    m.def("duplicate_search", &sqf::duplicate_search, py::arg("limit"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def("galois_orbit_check", [](const mpz_class& n) { return guarded([&] { return sqf::galois_orbit_check(n); }); });

    m.def("theorem_hypotheses", [](const mpz_class& n) {
        return guarded([&] {
            const auto h = sqf::theorem_hypotheses(n);
            py::dict out;
            out["case"] = sqf::to_string(h.which);
            out["d"] = h.d;
            out["y"] = h.y;
            out["trace"] = h.trace;
            out["trace_odd"] = h.trace_odd;
            out["unit_norm"] = h.unit_norm;
            out["unit"] = quad(h.unit);
            return out;
        });
    });

    m.def("fundamental_unit", [](const mpz_class& d) {
        return guarded([&] {
            const auto u = sqf::fundamental_unit(sqf::QuadraticField(d));
            py::dict out = quad(u.elem);
            out["norm"] = u.norm;
            return out;
        });
    }, "fundamental unit (a + b sqrt d)/2 of Q(sqrt d)");

    m.def("u_term", [](const mpz_class& t, unsigned long j) {
        return guarded([&] { return sqf::u_term(sqf::LucasParams(t), j); });
    });
    m.def("v_term", [](const mpz_class& t, unsigned long j) {
        return guarded([&] { return sqf::v_term(sqf::LucasParams(t), j); });
    });
    m.def("uv_mod", [](const mpz_class& t, const mpz_class& j, const mpz_class& mod) {
        return guarded([&] { return sqf::uv_mod(t, j, mod); });
    });
    m.def("classify_square", [](const mpz_class& v, const mpz_class& d) {
        return guarded([&] { return sqf::to_string(sqf::classify_square(v, d)); });
    });

    m.def("issue_certificate",
          [](const mpz_class& n, std::uint64_t prime_bound, unsigned long index_cap, unsigned workers) {
              const auto r = guarded([&] {
                  py::gil_scoped_release release;
                  return sqf::issue_certificate(n, prime_bound, index_cap, workers);
              });
              py::dict out;
              out["certificate"] = r.certificate ? py::object(py::str(sqf::to_json(*r.certificate))) : py::none();
              out["failure"] = sqf::to_string(r.failure);
              out["reason"] = r.reason;
              out["r0"] = r.r0 ? py::object(py::int_(*r.r0)) : py::none();
              return out;
          },
          py::arg("n"), py::arg("prime_bound") = sqf::kDefaultPrimeBound,
          py::arg("index_cap") = sqf::kDefaultIndexCap, py::arg("workers") = 1,
          "issue a certificate; 'certificate' holds the canonical file text or None");

    m.def("parse_certificate", [](const std::string& text) { return cert_dict(sqf::certificate_from_json(text)); });

    m.def("verify_certificate", [](const std::string& text) {
        const auto v = sqf::verify_certificate(sqf::certificate_from_json(text));
        py::list lines;
        for (const auto& c : v.transcript) lines.append(py::make_tuple(c.name, c.passed, c.detail));
        py::dict out;
        out["accepted"] = v.accepted;
        out["transcript"] = lines;
        out["conclusion"] = v.conclusion;
        return out;
    }, "verify canonical certificate text");

    m.def("root_number_E1", [](const mpz_class& t) { return sqf::root_number_E1(t); });
    m.def("root_number_E3", [](const mpz_class& t) { return sqf::root_number_E3(t); });
    m.def("bs_derivation_passes", [](const mpz_class& t) {
        return guarded([&] { return sqf::bs_derivation_check(t).passed(); });
    });

    m.def("integer_points", [](const mpz_class& t, std::optional<mpz_class> d, unsigned long x_bound) {
        return guarded([&] {
            const auto spec = d ? sqf::QuarticCurveSpec::c2(t, *d) : sqf::QuarticCurveSpec::c1(t);
            return sqf::integer_points_search(spec, x_bound);
        });
    }, py::arg("t"), py::arg("d") = py::none(), py::arg("x_bound") = 100,
       "integer points on C1 (d omitted) or C2");

    m.def("run", [](const std::vector<std::string>& argv) {
        // Minimal argument handling for scripted use: subcommand, positionals,
        // and --name value options.
        sqf::cli::RunConfig cfg;
        if (argv.empty()) throw py::value_error("missing subcommand");
        cfg.subcommand = argv[0];
        for (std::size_t i = 1; i < argv.size(); ++i) {
            const std::string& a = argv[i];
            if (a.rfind("--", 0) != 0) {
                cfg.args.push_back(a);
                continue;
            }
            if (i + 1 >= argv.size()) throw py::value_error("option " + a + " needs a value");
            const std::string& v = argv[++i];
            if (a == "--max-n") cfg.max_n = std::stoul(v);
            else if (a == "--prime-bound") cfg.prime_bound = std::stoull(v);
            else if (a == "--index-cap") cfg.index_cap = std::stoul(v);
            else if (a == "--terms") cfg.terms = std::stoul(v);
            else if (a == "--x-bound") cfg.x_bound = std::stoul(v);
            else if (a == "--format") cfg.format = v == "json" ? sqf::cli::Format::Json : sqf::cli::Format::Text;
            else if (a == "--out") cfg.out = v;
            else if (a == "--workers") cfg.workers = static_cast<unsigned>(std::stoul(v));
            else throw py::value_error("unknown option " + a);
        }
        std::ostringstream out, err;
        const int code = sqf::cli::run(cfg, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "run a CLI subcommand in-process; returns (exit_code, stdout, stderr)");
}
