#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "twinsmooth/arith.hpp"
#include "twinsmooth/cli/driver.hpp"
#include "twinsmooth/cli/records.hpp"
#include "twinsmooth/cli/verify.hpp"
#include "twinsmooth/error.hpp"
#include "twinsmooth/lehmer.hpp"
#include "twinsmooth/pell.hpp"
#include "twinsmooth/poly.hpp"
#include "twinsmooth/search.hpp"

namespace py = pybind11;

// Python int <-> mpz_class through decimal strings.
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

namespace ts = twinsmooth;

namespace {

py::tuple triple_tuple(const ts::CoefficientTriple& t) { return py::make_tuple(t.delta, t.x, t.y, t.n); }

std::vector<mpz_class> coeffs(const ts::SolutionPolynomial& p) { return p.coeffs; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Twin smooth integers from Pell equations";

    py::register_exception<ts::Error>(m, "TwinsmoothError", PyExc_ValueError);

    m.def("primes_up_to", [](std::uint64_t B) { return ts::primes_up_to(B).primes; }, py::arg("B"));
    m.def(
        "is_smooth", [](const mpz_class& n, std::uint64_t B) { return ts::is_b_smooth(n, ts::primes_up_to(B)); },
        py::arg("n"), py::arg("B"));
    m.def(
        "factor",
        [](const mpz_class& n, std::uint64_t B) {
            const auto f = ts::factor_with_bound(n, ts::primes_up_to(B));
            std::vector<std::pair<std::uint64_t, unsigned>> out;
            for (const auto& [p, e] : f.factors) out.emplace_back(p, e);
            return py::make_tuple(out, f.cofactor);
        },
        py::arg("n"), py::arg("B"), "Prime powers up to B and the leftover cofactor.");
    m.def(
        "sieve_twins",
        [](std::uint64_t lo, std::uint64_t hi, std::uint64_t B) {
            return ts::sieve_twin_smooth(lo, hi, ts::primes_up_to(B));
        },
        py::arg("lo"), py::arg("hi"), py::arg("B"));

    m.def(
        "fundamental_solution",
        [](const mpz_class& D, std::optional<mpz_class> cap) -> py::object {
            const auto out = ts::fundamental_solution(D, cap);
            if (const auto* s = std::get_if<ts::PellSolution>(&out)) return py::make_tuple(s->x, s->y);
            if (std::holds_alternative<ts::NotApplicable>(out))
                throw py::value_error("D=" + D.get_str() + " is a perfect square");
            return py::none();
        },
        py::arg("D"), py::arg("cap") = py::none(),
        "(x, y) of the fundamental solution of x^2 - D y^2 = 1, or None above the cap.");
    m.def(
        "nth_solution",
        [](const mpz_class& D, const mpz_class& x1, const mpz_class& y1, unsigned long n) {
            const auto s = ts::nth_solution(ts::PellSolution{D, x1, y1, 1}, n);
            return py::make_tuple(s.x, s.y);
        },
        py::arg("D"), py::arg("x1"), py::arg("y1"), py::arg("n"));

    m.def("p_coeffs", [](unsigned n) { return coeffs(ts::p_coeffs(n)); }, py::arg("n"));
    m.def("u_coeffs", [](unsigned n) { return coeffs(ts::u_coeffs(n)); }, py::arg("n"));
    m.def("v_coeffs", [](unsigned n) { return coeffs(ts::v_coeffs(n)); }, py::arg("n"));
    m.def("m_n_from_m1", &ts::m_n_from_m1, py::arg("m1"), py::arg("n"));
    m.def("max_m1_bits", &ts::max_m1_bits, py::arg("b"), py::arg("n"));

    m.def(
        "triple_from_pair",
        [](const mpz_class& m_, std::uint64_t B) { return triple_tuple(ts::triple_from_pair(m_, ts::primes_up_to(B))); },
        py::arg("m"), py::arg("B"), "(delta, x, y, n) for a twin B-smooth m.");
    m.def(
        "pair_from_triple",
        [](const mpz_class& delta, const mpz_class& x, const mpz_class& y, std::uint64_t B) {
            return ts::pair_from_triple(ts::CoefficientTriple{delta, x, y, 1}, ts::primes_up_to(B)).m;
        },
        py::arg("delta"), py::arg("x"), py::arg("y"), py::arg("B"));
    m.def(
        "enumerate_twins",
        [](std::uint64_t B) {
            const auto r = ts::enumerate_all_twins(ts::primes_up_to(B));
            return r.ms();
        },
        py::arg("B"), "Every m with m(m+1) B-smooth, in increasing order.");
    m.def(
        "chm_expand",
        [](const std::set<mpz_class>& seeds, std::uint64_t B, unsigned rounds) {
            return ts::chm_expand(seeds, ts::primes_up_to(B), rounds);
        },
        py::arg("seeds"), py::arg("B"), py::arg("rounds") = 32);

    m.def(
        "verify_line",
        [](const std::string& line) {
            const auto v = ts::cli::verify_record(ts::cli::record_from_line(line));
            std::vector<std::tuple<std::string, bool, std::string>> out;
            for (const auto& c : v.checks) out.emplace_back(c.name, c.ok, c.detail);
            return out;
        },
        py::arg("line"), "Checks run on one JSON result line: (name, ok, detail).");
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = ts::cli::run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a subcommand in process; returns (exit code, stdout, stderr).");
}
