// Python bindings for the icc3 core. Instances, colorings, formulas and
// reduction maps cross the boundary in their text formats; witnesses and
// assignments as plain lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "icc3/cnf.hpp"
#include "icc3/core.hpp"
#include "icc3/expander.hpp"
#include "icc3/gap.hpp"
#include "icc3/io.hpp"
#include "icc3/rational.hpp"
#include "icc3/reduction.hpp"
#include "icc3/rng.hpp"
#include "icc3/sat.hpp"
#include "icc3/solver.hpp"

namespace py = pybind11;
using namespace icc3;

namespace {

Coloring to_coloring(const std::vector<int>& codes) {
    Coloring col;
    col.reserve(codes.size());
    for (int c : codes) col.push_back(color_from_code(c));
    return col;
}

std::vector<int> from_coloring(const Coloring& col) {
    std::vector<int> out;
    out.reserve(col.size());
    for (Color c : col) out.push_back(code(c));
    return out;
}

Assignment to_assignment(const std::vector<bool>& values) {
    Assignment a;
    a.values = values;
    return a;
}

py::dict report_dict(const VerifyReport& rep) {
    py::dict d;
    d["violated"] = rep.violated;
    d["satisfied_count"] = rep.satisfied_count;
    py::list deltas;
    for (const auto& t : rep.deltas) deltas.append(py::make_tuple(t[0], t[1], t[2]));
    d["deltas"] = deltas;
    return d;
}

py::dict audit_dict(const AuditReport& r) {
    py::dict d;
    d["violated"] = r.violated;
    d["broken_clauses"] = r.broken_clauses;
    d["broken_links"] = r.broken_links;
    d["bad_clauses"] = r.bad_clauses;
    d["bound"] = r.bound.str();
    d["unsat_phi"] = r.unsat_phi;
    d["holds"] = r.holds;
    return d;
}

std::string status_str(SolveStatus s) {
    switch (s) {
        case SolveStatus::Feasible: return "FEASIBLE";
        case SolveStatus::Infeasible: return "INFEASIBLE";
        case SolveStatus::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "interval constrained 3-coloring: instances, solvers, reductions, gap audits";

    py::register_exception<ParseError>(m, "IccParseError");
    py::register_exception<InputError>(m, "IccInputError");
    py::register_exception<CapacityError>(m, "IccCapacityError");

    // instance model and formats
    m.def("check_consistency",
          [](const std::string& text) { return check_consistency(parse_instance(text)); },
          py::arg("instance_text"));
    m.def("verify",
          [](const std::string& text, const std::vector<int>& colors) {
              return report_dict(verify(parse_instance(text), to_coloring(colors)));
          },
          py::arg("instance_text"), py::arg("coloring"));
    m.def("count_colors",
          [](const std::vector<int>& colors, int lo, int hi) {
              auto t = count_colors(to_coloring(colors), lo, hi);
              return py::make_tuple(t[0], t[1], t[2]);
          },
          py::arg("coloring"), py::arg("lo"), py::arg("hi"));
    m.def("normalize_instance",
          [](const std::string& text) { return emit_instance(parse_instance(text)); },
          py::arg("instance_text"));
    m.def("random_hdx_instance",
          [](int chain, int fragments, int min_len, int max_len, uint64_t seed) {
              auto [inst, hidden] = random_hdx_instance(chain, fragments, min_len, max_len, seed);
              return py::make_tuple(emit_instance(inst), from_coloring(hidden));
          },
          py::arg("chain_length"), py::arg("fragment_count"), py::arg("min_len"),
          py::arg("max_len"), py::arg("seed"));

    // 3-SAT tooling
    m.def("normalize_dimacs",
          [](const std::string& text) { return emit_dimacs(parse_dimacs(text)); },
          py::arg("dimacs_text"));
    m.def("eval_unsat",
          [](const std::string& text, const std::vector<bool>& values) {
              return eval_unsat(parse_dimacs(text), to_assignment(values));
          },
          py::arg("dimacs_text"), py::arg("assignment"));
    m.def("planted_random_3sat",
          [](int p, int q, uint64_t seed) {
              auto [f, plant] = planted_random_3sat(p, q, seed);
              return py::make_tuple(emit_dimacs(f), plant.values);
          },
          py::arg("p"), py::arg("q"), py::arg("seed"));
    m.def("brute_force_sat",
          [](const std::string& text) -> py::object {
              auto a = brute_force_sat(parse_dimacs(text));
              if (!a) return py::none();
              return py::cast(a->values);
          },
          py::arg("dimacs_text"));
    m.def("max_sat_brute",
          [](const std::string& text) {
              auto [a, count] = max_sat_brute(parse_dimacs(text));
              return py::make_tuple(a.values, count);
          },
          py::arg("dimacs_text"));

    // solvers
    m.def("solve_backtracking",
          [](const std::string& text, uint64_t budget) {
              auto out = solve_backtracking(parse_instance(text), budget);
              py::dict d;
              d["status"] = status_str(out.status);
              d["witness"] = out.witness ? py::cast(from_coloring(*out.witness)) : py::none();
              d["nodes"] = out.stats.nodes;
              return d;
          },
          py::arg("instance_text"), py::arg("budget") = kNoBudget);
    m.def("enumerate_colorings",
          [](const std::string& text, size_t limit) {
              std::vector<std::vector<int>> out;
              for (const auto& col : enumerate_colorings(parse_instance(text), limit))
                  out.push_back(from_coloring(col));
              return out;
          },
          py::arg("instance_text"), py::arg("limit"));
    m.def("max_satisfy_brute",
          [](const std::string& text) {
              auto [col, count] = max_satisfy_brute(parse_instance(text));
              return py::make_tuple(from_coloring(col), count);
          },
          py::arg("instance_text"));
    m.def("solve_dpll_instance",
          [](const std::string& text, uint64_t budget) {
              auto enc = encode_to_cnf(parse_instance(text));
              auto res = solve_dpll(enc.cnf, budget);
              py::dict d;
              d["status"] = res.status == SatStatus::Sat       ? "FEASIBLE"
                            : res.status == SatStatus::Unsat   ? "INFEASIBLE"
                                                               : "UNKNOWN";
              d["witness"] = res.status == SatStatus::Sat
                                 ? py::cast(from_coloring(decode_model(enc, res.model)))
                                 : py::none();
              d["vars"] = enc.cnf.var_count;
              d["aux"] = enc.aux_count;
              return d;
          },
          py::arg("instance_text"), py::arg("budget") = kNoBudget);

    // reduction and witness translation
    m.def("reduce",
          [](const std::string& dimacs) {
              auto [inst, map] = reduce(parse_dimacs(dimacs));
              return py::make_tuple(emit_instance(inst), emit_map(map));
          },
          py::arg("dimacs_text"));
    m.def("encode_coloring",
          [](const std::string& map_text, const std::vector<bool>& values) {
              return from_coloring(encode_coloring(parse_map(map_text), to_assignment(values)));
          },
          py::arg("map_text"), py::arg("assignment"));
    m.def("extract_assignment",
          [](const std::string& map_text, const std::vector<int>& colors) {
              return extract_assignment(parse_map(map_text), to_coloring(colors)).values;
          },
          py::arg("map_text"), py::arg("coloring"));
    m.def("majority_extract",
          [](const std::string& map_text, const std::vector<int>& colors) {
              return majority_extract(parse_map(map_text), to_coloring(colors)).values;
          },
          py::arg("map_text"), py::arg("coloring"));

    // expanders and the gap construction
    m.def("edge_expansion_exact",
          [](int n, const std::vector<std::pair<int, int>>& edges) {
              Multigraph g;
              g.n = n;
              g.edges = edges;
              return edge_expansion_exact(g).str();
          },
          py::arg("n"), py::arg("edges"));
    m.def("expansion_lower_bound_spectral",
          [](int n, const std::vector<std::pair<int, int>>& edges) {
              Multigraph g;
              g.n = n;
              g.edges = edges;
              return expansion_lower_bound_spectral(g);
          },
          py::arg("n"), py::arg("edges"));
    m.def("build_expander",
          [](int n, int d, const std::string& target_h, uint64_t seed) {
              auto [g, cert] = build_expander(n, d, Rational::parse(target_h), seed);
              py::dict out;
              out["n"] = g.n;
              out["edges"] = g.edges;
              out["d"] = cert.d;
              out["h"] = cert.h_bound.str();
              out["method"] = method_name(cert.method);
              return out;
          },
          py::arg("n"), py::arg("d"), py::arg("target_h"), py::arg("seed"));
    m.def("gap_reduce",
          [](const std::string& dimacs, int d, const std::string& target_h, uint64_t seed,
             const std::string& eps0) {
              auto gr = gap_reduce(parse_dimacs(dimacs), d, Rational::parse(target_h), seed,
                                   Rational::parse(eps0));
              py::dict params;
              params["d0"] = gr.params.d0;
              params["h0"] = gr.params.h0.str();
              params["c"] = gr.params.c;
              params["eps0"] = gr.params.eps0.str();
              params["eps"] = gr.params.eps.str();
              params["threshold"] = gr.params.threshold.str();
              return py::make_tuple(emit_instance(gr.inst), emit_map(gr.map), params);
          },
          py::arg("dimacs_text"), py::arg("d") = 4, py::arg("target_h") = "1",
          py::arg("seed") = 1, py::arg("eps0") = "1/8");
    m.def("soundness_audit",
          [](const std::string& map_text, const std::string& inst_text,
             const std::vector<int>& colors, int d0, const std::string& h0,
             const std::string& eps0) {
              ReductionMap map = parse_map(map_text);
              GapParams params;
              params.d0 = d0;
              params.h0 = Rational::parse(h0);
              params.c = map.c_const;
              params.eps0 = Rational::parse(eps0);
              params.eps = compute_epsilon(d0, params.h0, params.c, params.eps0);
              return audit_dict(
                  soundness_audit(map, parse_instance(inst_text), to_coloring(colors), params));
          },
          py::arg("map_text"), py::arg("instance_text"), py::arg("coloring"), py::arg("d0"),
          py::arg("h0"), py::arg("eps0") = "1/8");
    m.def("compute_epsilon",
          [](int d0, const std::string& h0, long long c, const std::string& eps0) {
              return compute_epsilon(d0, Rational::parse(h0), c, Rational::parse(eps0)).str();
          },
          py::arg("d0"), py::arg("h0"), py::arg("c"), py::arg("eps0"));
}
