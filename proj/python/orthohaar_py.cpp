#include "orthohaar/battery.hpp"
#include "orthohaar/householder.hpp"
#include "orthohaar/marginal.hpp"
#include "orthohaar/sampler.hpp"
#include "orthohaar/stats.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <stdexcept>

namespace py = pybind11;
using namespace orthohaar;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_numpy(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

Matrix from_numpy(const DoubleArray& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy_n(a.data(), a.size(), m.data().begin());
  return m;
}

std::span<const double> as_span(const DoubleArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
  return {a.data(), static_cast<std::size_t>(a.size())};
}

py::dict report_dict(const TestReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["n"] = r.n;
  d["statistic"] = r.statistic;
  d["threshold"] = r.threshold;
  d["passed"] = r.passed;
  d["details"] = r.details;
  return d;
}

template <class F>
py::array_t<double> vectorize(const DoubleArray& x, F f) {
  py::array_t<double> out(x.request().shape);
  const double* in = x.data();
  double* o = out.mutable_data();
  for (py::ssize_t i = 0; i < x.size(); ++i) o[i] = f(in[i]);
  return out;
}

}  // namespace

PYBIND11_MODULE(orthohaar, m) {
  m.doc() = "Haar-distributed orthogonal matrices";

  m.def(
      "haar_sample",
      [](int p, std::uint64_t seed, std::uint64_t stream, const std::string& method) {
        RngStream rng(seed, stream);
        return to_numpy(draw(parse_method(method), p, rng).gamma.matrix());
      },
      py::arg("p"), py::arg("seed"), py::arg("stream") = 0, py::arg("method") = "recursive");

  m.def(
      "sample_batch",
      [](int p, std::size_t n, std::uint64_t seed, const std::string& method, unsigned threads) {
        const auto method_id = parse_method(method);
        std::vector<HaarSample> ds;
        {
          py::gil_scoped_release release;
          ds = sample_batch(method_id, p, n, RngStream(seed), threads);
        }
        const auto q = static_cast<py::ssize_t>(p);
        py::array_t<double> out({static_cast<py::ssize_t>(n), q, q});
        double* o = out.mutable_data();
        for (const auto& d : ds) o = std::copy(d.gamma.matrix().data().begin(), d.gamma.matrix().data().end(), o);
        return out;
      },
      py::arg("p"), py::arg("n"), py::arg("seed"), py::arg("method") = "recursive",
      py::arg("threads") = 1);

  m.def("cross_section", [](double g, int p) { return to_numpy(cross_section_matrix(g, p).matrix()); },
        py::arg("gamma11"), py::arg("p"));

  m.def("orthogonality_residual", [](const DoubleArray& a) { return orthogonality_residual(from_numpy(a)); });
  m.def("determinant", [](const DoubleArray& a) { return determinant(from_numpy(a)); });

  py::class_<MarginalLaw>(m, "MarginalLaw")
      .def(py::init<int>(), py::arg("p"))
      .def_property_readonly("p", &MarginalLaw::p)
      .def_property_readonly("beta_shape", &MarginalLaw::beta_shape)
      .def("pdf", [](const MarginalLaw& l, const DoubleArray& x) { return vectorize(x, [&](double v) { return l.pdf(v); }); })
      .def("cdf", [](const MarginalLaw& l, const DoubleArray& x) { return vectorize(x, [&](double v) { return l.cdf(v); }); })
      .def("quantile", [](const MarginalLaw& l, const DoubleArray& u) { return vectorize(u, [&](double v) { return l.quantile(v); }); })
      .def(
          "sample",
          [](const MarginalLaw& l, std::size_t n, std::uint64_t seed) {
            RngStream rng(seed);
            py::array_t<double> out(static_cast<py::ssize_t>(n));
            double* o = out.mutable_data();
            for (std::size_t i = 0; i < n; ++i) o[i] = l.sample(rng);
            return out;
          },
          py::arg("n"), py::arg("seed"));

  m.def(
      "reflector_between",
      [](const DoubleArray& u, const DoubleArray& v) { return to_numpy(reflector_between(as_span(u), as_span(v)).dense()); },
      py::arg("u"), py::arg("v"), "Dense symmetric orthogonal h with hu = v.");

  m.def(
      "ks_marginal",
      [](const DoubleArray& samples, int p, double alpha) {
        const MarginalLaw law(p);
        return report_dict(ks_one_sample("gamma11_marginal", as_span(samples),
                                         [&](double x) { return law.cdf(x); }, KsOptions{alpha, 1.0}));
      },
      py::arg("samples"), py::arg("p"), py::arg("alpha") = 0.01);

  m.def(
      "ks_two_sample",
      [](const DoubleArray& a, const DoubleArray& b, double alpha) {
        return report_dict(ks_two_sample("two_sample", as_span(a), as_span(b), KsOptions{alpha, 1.0}));
      },
      py::arg("a"), py::arg("b"), py::arg("alpha") = 0.01);

  m.def(
      "run_battery",
      [](int p, std::size_t n, std::uint64_t seed, const std::string& method, double alpha) {
        BatteryOptions opts{parse_method(method), p, n, seed, alpha};
        std::vector<TestReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_battery(opts);
        }
        py::list out;
        for (const auto& r : reports) out.append(report_dict(r));
        return out;
      },
      py::arg("p"), py::arg("n") = 100000, py::arg("seed") = 0, py::arg("method") = "recursive",
      py::arg("alpha") = 0.01);
}
