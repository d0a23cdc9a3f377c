#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psiorder/cf.hpp"
#include "psiorder/errors.hpp"
#include "psiorder/io.hpp"
#include "psiorder/order.hpp"
#include "psiorder/psi.hpp"
#include "psiorder/synth.hpp"
#include "psiorder/triangle.hpp"
#include "psiorder/verify.hpp"

namespace py = pybind11;
using namespace psiorder;

namespace {

BigInt to_big(const py::object& x) { return parse_bigint(py::str(x).cast<std::string>()); }

py::object to_py(const BigInt& x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

std::vector<py::object> expand(const std::string& spec, std::size_t n) {
  auto source = PartialQuotientSource::parse(spec);
  std::vector<py::object> out;
  for (std::size_t m = 0; m < n; ++m) {
    auto a = source.term(m);
    if (!a) break;
    out.push_back(to_py(*a));
  }
  return out;
}

std::vector<py::object> denominators(const std::string& spec, std::size_t n) {
  ConvergentTable table(PartialQuotientSource::parse(spec));
  std::vector<py::object> out;
  for (std::size_t m = 0; m < n && table.try_ensure(m); ++m) out.push_back(to_py(table.q(m)));
  return out;
}

py::dict psi(const std::string& spec, const py::object& t, bool left, int digits) {
  auto source = PartialQuotientSource::parse(spec);
  const auto width = pow10_inverse(static_cast<unsigned>(digits + 2));
  auto e = left ? psi_left_limit(source, to_big(t), width) : psi_at(source, to_big(t), width);
  py::dict d;
  d["m"] = e.m;
  d["q"] = to_py(e.q);
  d["lo"] = to_string(e.value.lo);
  d["hi"] = to_string(e.value.hi);
  d["decimal"] = to_decimal(e.value.lo, digits, false);
  return d;
}

std::vector<std::string> order_vector(const std::vector<std::string>& sources, const py::object& t,
                                      int depth_limit) {
  return order_vector_at(FunctionTuple::from_specs(sources), to_big(t), depth_limit).labels;
}

std::string trace(const std::vector<std::string>& sources, const py::object& t0, std::size_t count,
                  int depth_limit, std::size_t max_events, const py::object& horizon,
                  std::uint64_t seed) {
  TraceOptions options;
  options.depth_limit = depth_limit;
  options.max_events = max_events;
  if (!horizon.is_none()) options.horizon = to_big(horizon);
  auto tuple = FunctionTuple::from_specs(sources);
  return emit_trace({tool_version(), seed, change_trace(tuple, to_big(t0), count, options)});
}

std::string verify(const std::string& trace_text, int k) {
  return to_json(verify_structure(parse_trace(trace_text).trace, k)).dump();
}

std::vector<std::string> apply(int k, const std::vector<std::string>& items) {
  return apply_pi(k, items);
}

std::string synth(const std::string& schedule_text, std::uint64_t seed, std::size_t search_bound,
                  std::size_t branch_limit, std::size_t tail_length, std::uint64_t tail_bound) {
  auto schedule = parse_schedule(schedule_text);
  SynthesisOptions options;
  options.search_bound = search_bound;
  options.branch_limit = branch_limit;
  options.tail_length = tail_length;
  options.tail_seed = seed;
  options.tail_bound = tail_bound;
  auto result = synthesize(schedule, options);
  auto doc = to_json(result, seed);
  auto failure = replay_check(schedule, result);
  doc["replay"] = failure.empty() ? "pass" : failure;
  return doc.dump();
}

std::string staircase(const std::vector<std::string>& sources, const py::object& horizon) {
  return staircase_csv(staircase_points(FunctionTuple::from_specs(sources), to_big(horizon)));
}

}  // namespace

PYBIND11_MODULE(_psiorder, m) {
  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      auto cls = py::reinterpret_borrow<py::object>(error.ptr());
      py::object exc = cls(e.what());
      exc.attr("kind") = e.kind();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.attr("__version__") = tool_version();
  m.def("expand", &expand, py::arg("source"), py::arg("n"));
  m.def("denominators", &denominators, py::arg("source"), py::arg("n"));
  m.def("psi", &psi, py::arg("source"), py::arg("t"), py::arg("left") = false, py::arg("digits") = 30);
  m.def("order_vector", &order_vector, py::arg("sources"), py::arg("t"),
        py::arg("depth_limit") = kDefaultDepthLimit);
  m.def("trace", &trace, py::arg("sources"), py::arg("t0"), py::arg("count") = 20,
        py::arg("depth_limit") = kDefaultDepthLimit, py::arg("max_events") = 100000,
        py::arg("horizon") = py::none(), py::arg("seed") = 0);
  m.def("verify", &verify, py::arg("trace"), py::arg("k"));
  m.def("apply_pi", &apply, py::arg("k"), py::arg("items"));
  m.def("pi_order", &pi_order, py::arg("k"));
  m.def("pi_cycles", &cycle_decomposition, py::arg("k"));
  m.def("synthesize", &synth, py::arg("schedule"), py::arg("seed") = 0,
        py::arg("search_bound") = 1000000, py::arg("branch_limit") = 8, py::arg("tail_length") = 80,
        py::arg("tail_bound") = 4);
  m.def("staircase_csv", &staircase, py::arg("sources"), py::arg("horizon"));
}
