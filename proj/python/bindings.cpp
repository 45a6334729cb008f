// Pybind11 bindings exposing the main operations of the C++ core.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "hecke/equidist.hpp"
#include "hecke/errors.hpp"
#include "hecke/operators.hpp"
#include "hecke/verify.hpp"

namespace py = pybind11;
using namespace hecke;

namespace {

py::object mpz_to_pyint(const mpz_class& z) {
    return py::module_::import("builtins").attr("int")(z.get_str());
}

py::list coeffs_to_list(const RingElem& e) {
    py::list out;
    for (const auto& c : e.coeffs()) out.append(mpz_to_pyint(c));
    return out;
}

std::vector<mpz_class> coeffs_from_list(const py::sequence& seq) {
    std::vector<mpz_class> out;
    for (const auto& item : seq) out.emplace_back(py::str(item).cast<std::string>());
    return out;
}

// Exact-arithmetic handle: the shared context plus the element values bound
// against it. Elements keep their ring alive through the shared_ptr.
struct PyRing;

struct PyElem {
    std::shared_ptr<const RingContext> ctx;
    RingElem value;
};

struct PyMat {
    std::shared_ptr<const RingContext> ctx;
    GroupElem value;
};

struct PyRing {
    std::shared_ptr<const RingContext> ctx;

    explicit PyRing(long q, long prec) : ctx(std::make_shared<const RingContext>(q, prec)) {}

    PyElem wrap(RingElem e) const { return PyElem{ctx, std::move(e)}; }
    PyMat wrapm(GroupElem g) const { return PyMat{ctx, std::move(g)}; }
};

// Farey-map handle owning its context; numeric and measure-level operations
// hang off this object.
struct PyFarey {
    std::shared_ptr<const RingContext> ctx;
    FareyMap fm;

    explicit PyFarey(long q, long prec)
        : ctx(std::make_shared<const RingContext>(q, prec)), fm(*ctx) {}
};

RealFn named_density(const std::string& name) { return density_by_name(name).fn; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact and numerical computation with generalized Farey maps of Hecke "
              "triangle groups";

    py::register_exception<CapExceeded>(m, "CapExceeded");
    py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted");

    m.def("minpoly", [](long q) {
        const RingContext ctx(q);
        py::list out;
        for (const auto& c : ctx.minpoly()) out.append(mpz_to_pyint(c));
        return out;
    }, py::arg("q"), "Minimal polynomial of 2cos(pi/q), constant coefficient first");

    py::class_<PyElem>(m, "Elem")
        .def_property_readonly("coeffs", [](const PyElem& e) { return coeffs_to_list(e.value); })
        .def("sign", [](const PyElem& e) { return e.value.sign(); })
        .def("is_zero", [](const PyElem& e) { return e.value.is_zero(); })
        .def("__float__", [](const PyElem& e) { return e.value.to_double(); })
        .def("__add__", [](const PyElem& a, const PyElem& b) { return PyElem{a.ctx, a.value + b.value}; })
        .def("__sub__", [](const PyElem& a, const PyElem& b) { return PyElem{a.ctx, a.value - b.value}; })
        .def("__mul__", [](const PyElem& a, const PyElem& b) { return PyElem{a.ctx, a.value * b.value}; })
        .def("__neg__", [](const PyElem& a) { return PyElem{a.ctx, -a.value}; })
        .def("__eq__", [](const PyElem& a, const PyElem& b) { return a.value == b.value; })
        .def("__repr__", [](const PyElem& e) { return "Elem(" + e.value.json() + ")"; });

    py::class_<PyMat>(m, "Mat")
        .def_property_readonly("det", [](const PyMat& g) { return g.value.det; })
        .def_property_readonly("entries",
                               [](const PyMat& g) {
                                   return py::make_tuple(PyElem{g.ctx, g.value.a},
                                                         PyElem{g.ctx, g.value.b},
                                                         PyElem{g.ctx, g.value.c},
                                                         PyElem{g.ctx, g.value.d});
                               })
        .def("apply", [](const PyMat& g, double x) { return moebius_apply_float(g.value, x); })
        .def("derivative", [](const PyMat& g, double x) { return derivative_float(g.value, x); })
        .def("inverse", [](const PyMat& g) { return PyMat{g.ctx, group_inverse(g.value)}; })
        .def("__mul__",
             [](const PyMat& a, const PyMat& b) { return PyMat{a.ctx, group_mul(a.value, b.value)}; })
        .def("__eq__", [](const PyMat& a, const PyMat& b) { return a.value == b.value; })
        .def("__repr__", [](const PyMat& g) { return "Mat(" + g.value.json() + ")"; });

    py::class_<PyRing>(m, "Ring")
        .def(py::init<long, long>(), py::arg("q"), py::arg("prec") = 256)
        .def_property_readonly("q", [](const PyRing& r) { return r.ctx->q(); })
        .def_property_readonly("degree", [](const PyRing& r) { return r.ctx->degree(); })
        .def_property_readonly("minpoly",
                               [](const PyRing& r) {
                                   py::list out;
                                   for (const auto& c : r.ctx->minpoly()) out.append(mpz_to_pyint(c));
                                   return out;
                               })
        .def_property_readonly("lambda_value",
                               [](const PyRing& r) { return r.ctx->lambda_double(); })
        .def("lambda_elem", [](const PyRing& r) { return r.wrap(r.ctx->lambda()); })
        .def("elem",
             [](const PyRing& r, const py::sequence& coeffs) {
                 return r.wrap(r.ctx->from_coeffs(coeffs_from_list(coeffs)));
             })
        .def("s", [](const PyRing& r, long k) { return r.wrap(r.ctx->chebyshev_s(k)); },
             py::arg("k"), "Chebyshev-type sequence s(k) = sin(k pi/q)/sin(pi/q)")
        .def("generators",
             [](const PyRing& r) {
                 const Generators g = generators(*r.ctx);
                 return py::make_tuple(r.wrapm(g.T), r.wrapm(g.S), r.wrapm(g.U), r.wrapm(g.Q));
             })
        .def("branch_element",
             [](const PyRing& r, long k) { return r.wrapm(branch_element(*r.ctx, k)); })
        .def("alphabet", [](const PyRing& r) {
            py::list out;
            for (auto& g : alphabet(*r.ctx)) out.append(r.wrapm(std::move(g)));
            return out;
        });

    py::class_<PyFarey>(m, "Farey")
        .def(py::init<long, long>(), py::arg("q"), py::arg("prec") = 256)
        .def_property_readonly("q", [](const PyFarey& f) { return f.ctx->q(); })
        .def_property_readonly("lambda_value", [](const PyFarey& f) { return f.ctx->lambda_double(); })
        .def("breakpoints", [](const PyFarey& f) { return f.fm.breakpoints_float(); })
        .def("apply", [](const PyFarey& f, double x) { return f.fm.apply(x); })
        .def("orbit", [](const PyFarey& f, double x, int n) { return f.fm.orbit(x, n); })
        .def("stern_brocot",
             [](const PyFarey& f, int n) {
                 py::list out;
                 for (const ProjPoint& p : stern_brocot_level(*f.ctx, n)) {
                     out.append(py::make_tuple(coeffs_to_list(p.num), coeffs_to_list(p.den),
                                               p.to_double()));
                 }
                 return out;
             },
             py::arg("n"), "Level-n points as (num_coeffs, den_coeffs, float) triples")
        .def("sweep_out_left", [](const PyFarey& f, long n) {
                 return sweep_out_union(*f.ctx, n).left.to_double();
             })
        .def("first_return_time",
             [](const PyFarey& f, double x, double y_left, long cap) {
                 const HitResult h = first_return_time(f.fm, x, y_left, 1.0, cap);
                 return h.reached ? py::object(py::int_(h.steps)) : py::object(py::none());
             },
             py::arg("x"), py::arg("y_left"), py::arg("cap") = kDefaultHitCap)
        .def("pf_apply",
             [](const PyFarey& f, const std::function<double(double)>& fn, double x) {
                 return pf_apply(f.fm, fn, x);
             })
        .def("pf",
             [](const PyFarey& f, const std::string& density, double x, int n) {
                 return pf_iterate_pointwise(f.fm, named_density(density), x, n);
             },
             py::arg("density"), py::arg("x"), py::arg("n"),
             "(P^n f)(x) for f in {'one', 'invx'}")
        .def("transfer_apply",
             [](const PyFarey& f, const std::function<double(double)>& fn, double x) {
                 return transfer_apply(f.fm, fn, x);
             })
        .def("eigenfunction_residual",
             [](const PyFarey& f, int grid) { return eigenfunction_residual(f.fm, grid); },
             py::arg("grid") = 1000)
        .def("preimage_words",
             [](const PyFarey& f, int n, double alpha, double beta) {
                 return preimage_lebesgue_words(f.fm, n, alpha, beta);
             })
        .def("preimage_mc",
             [](const PyFarey& f, int n, double alpha, double beta, long samples,
                std::uint64_t seed) {
                 const McEstimate mc =
                     preimage_lebesgue_montecarlo(f.fm, n, alpha, beta, samples, seed);
                 return py::make_tuple(mc.estimate, mc.stderr_);
             },
             py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("samples") = 100000,
             py::arg("seed") = 0)
        .def("dirac_comb",
             [](const PyFarey& f, double x, int n, bool log_factor) {
                 const WeightedComb comb = dirac_comb(f.fm, x, n, log_factor);
                 const std::vector<py::ssize_t> shape{
                     static_cast<py::ssize_t>(comb.atoms.size())};
                 py::array_t<double> locs(shape);
                 py::array_t<double> weights(shape);
                 auto* lp = locs.mutable_data();
                 auto* wp = weights.mutable_data();
                 for (size_t i = 0; i < comb.atoms.size(); ++i) {
                     lp[i] = comb.atoms[i].location;
                     wp[i] = comb.atoms[i].weight;
                 }
                 return py::make_tuple(locs, weights);
             },
             py::arg("x"), py::arg("n"), py::arg("log_factor") = true)
        .def("cusp_comb",
             [](const PyFarey& f, const std::vector<int>& base_word, int n, bool log_factor) {
                 Word w;
                 w.letters = base_word;
                 const ReducedFraction base =
                     reduced_from_word(*f.ctx, w, reduced_base_one(*f.ctx));
                 const CuspComb cc = cusp_comb(*f.ctx, base, n, log_factor);
                 py::dict out;
                 out["rf_count"] = cc.rf_count;
                 out["base"] = base.to_double();
                 py::list atoms;
                 for (const auto& a : cc.comb.atoms)
                     atoms.append(py::make_tuple(a.location, a.weight));
                 out["atoms"] = atoms;
                 return out;
             },
             py::arg("base_word"), py::arg("n"), py::arg("log_factor") = true)
        .def("tail_exact", [](const PyFarey& f, long N, long n) { return tail_exact(*f.ctx, N, n); })
        .def("tail_summation",
             [](const PyFarey& f, long N, long n) { return tail_summation(*f.ctx, N, n); })
        .def("tail_mc",
             [](const PyFarey& f, long N, long n_max, long samples, std::uint64_t seed) {
                 const TailReport rep = tail_montecarlo(f.fm, N, n_max, samples, seed);
                 py::list rows;
                 for (const auto& r : rep.rows)
                     rows.append(py::make_tuple(r.n, r.exact, r.estimate, r.stderr_));
                 py::dict out;
                 out["mu_y"] = rep.mu_y;
                 out["censored"] = rep.censored;
                 out["rows"] = rows;
                 return out;
             },
             py::arg("N") = 0, py::arg("n_max") = 10, py::arg("samples") = 100000,
             py::arg("seed") = 0)
        .def("mixing",
             [](const PyFarey& f, double u_lo, double u_hi, double v_lo, double v_hi, int n) {
                 return mixing_statistic(f.fm, u_lo, u_hi, v_lo, v_hi, n);
             })
        .def("ulam",
             [](const PyFarey& f, int bins) {
                 const UlamMatrix u = ulam_build(f.fm, bins);
                 py::array_t<double> out({bins, bins});
                 auto* p = out.mutable_data();
                 std::fill(p, p + static_cast<size_t>(bins) * bins, 0.0);
                 for (int i = 0; i < bins; ++i) {
                     for (const auto& [j, v] : u.rows[static_cast<size_t>(i)])
                         p[static_cast<size_t>(i) * bins + j] = v;
                 }
                 return out;
             },
             py::arg("bins"), "Dense Ulam matrix; row i, column j")
        .def("ulam_density", [](const PyFarey& f, int bins, int iters) {
            const UlamMatrix u = ulam_build(f.fm, bins);
            return ulam_iterate(u, std::vector<double>(static_cast<size_t>(bins), 1.0), iters);
        });

    m.def("mu_interval", &mu_interval, py::arg("a"), py::arg("b"));
}
