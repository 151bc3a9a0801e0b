// icc3 command-line tool: reductions, solving, verification and audits for
// interval constrained 3-coloring instances.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

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

namespace {

enum ExitCode : int {
    kOk = 0,
    kInfeasible = 10,
    kUnknown = 20,
    kUsage = 1,
    kBadInput = 2,
    kInternal = 3,
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw icc3::InputError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw icc3::InputError("cannot write " + path);
    out << data;
}

std::string gapparams_line(const icc3::GapParams& p) {
    std::ostringstream os;
    os << "m gapparams d0 " << p.d0 << " h0 " << p.h0.str() << " eps0 " << p.eps0.str() << " eps "
       << p.eps.str() << " threshold " << p.threshold.str() << "\n";
    return os.str();
}

std::optional<icc3::GapParams> parse_gapparams(const std::string& map_text, long long c) {
    std::istringstream is(map_text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string m, kind;
        if (!(ls >> m >> kind)) continue;
        if (m != "m" || kind != "gapparams") continue;
        icc3::GapParams p;
        std::string tok, val;
        p.c = c;
        while (ls >> tok >> val) {
            if (tok == "d0") p.d0 = std::stoi(val);
            else if (tok == "h0") p.h0 = icc3::Rational::parse(val);
            else if (tok == "eps0") p.eps0 = icc3::Rational::parse(val);
            else if (tok == "eps") p.eps = icc3::Rational::parse(val);
            else if (tok == "threshold") p.threshold = icc3::Rational::parse(val);
        }
        return p;
    }
    return std::nullopt;
}

int cmd_reduce(const std::string& in, const std::string& out, const std::string& map_out,
               bool gap, int degree, const std::string& target_h, uint64_t seed,
               const std::string& eps0) {
    icc3::CnfFormula f = icc3::parse_dimacs(read_file(in));
    if (gap) {
        auto gr = icc3::gap_reduce(f, degree, icc3::Rational::parse(target_h), seed,
                                   icc3::Rational::parse(eps0));
        write_file(out, icc3::emit_instance(gr.inst));
        write_file(map_out, icc3::emit_map(gr.map) + gapparams_line(gr.params));
        std::cout << "r nodes " << gr.inst.n << " intervals " << gr.inst.intervals.size() << "\n";
        std::cout << "g params d0 " << gr.params.d0 << " h0 " << gr.params.h0.str() << " c "
                  << gr.params.c << " eps0 " << gr.params.eps0.str() << " eps "
                  << gr.params.eps.str() << " threshold " << gr.params.threshold.str() << "\n";
    } else {
        auto [inst, map] = icc3::reduce(f);
        write_file(out, icc3::emit_instance(inst));
        write_file(map_out, icc3::emit_map(map));
        std::cout << "r nodes " << inst.n << " intervals " << inst.intervals.size() << "\n";
    }
    return kOk;
}

int cmd_solve(const std::string& in, const std::string& method, uint64_t budget,
              long long enumerate_limit, bool max_sat) {
    icc3::Instance inst = icc3::parse_instance(read_file(in));
    auto bad = icc3::check_consistency(inst);
    if (!bad.empty()) {
        std::cout << "c inconsistent";
        for (int id : bad) std::cout << " " << id;
        std::cout << "\n";
        return kBadInput;
    }
    if (max_sat) {
        auto [col, count] = icc3::max_satisfy_brute(inst);
        std::cout << "o " << count << "\n";
        std::cout << icc3::emit_coloring({icc3::SolveStatus::Feasible, col});
        return kOk;
    }
    if (enumerate_limit >= 0) {
        std::vector<icc3::Coloring> found;
        icc3::for_each_feasible(inst, [&](const icc3::Coloring& col) {
            found.push_back(col);
            return static_cast<long long>(found.size()) < enumerate_limit;
        });
        if (found.empty()) {
            std::cout << icc3::emit_coloring({icc3::SolveStatus::Infeasible, {}});
            return kInfeasible;
        }
        std::cout << "s FEASIBLE\n";
        for (const auto& col : found) {
            std::cout << "v";
            for (auto c : col) std::cout << " " << icc3::code(c);
            std::cout << "\n";
        }
        return kOk;
    }
    icc3::SolveOutcome out;
    if (method == "backtrack") {
        out = icc3::solve_backtracking(inst, budget);
    } else if (method == "dpll") {
        auto enc = icc3::encode_to_cnf(inst);
        auto res = icc3::solve_dpll(enc.cnf, budget);
        out.status = res.status == icc3::SatStatus::Sat      ? icc3::SolveStatus::Feasible
                     : res.status == icc3::SatStatus::Unsat  ? icc3::SolveStatus::Infeasible
                                                             : icc3::SolveStatus::Unknown;
        if (res.status == icc3::SatStatus::Sat) out.witness = icc3::decode_model(enc, res.model);
    } else {
        std::cerr << "error: --method must be backtrack or dpll\n";
        return kUsage;
    }
    icc3::ColoringFile cf;
    cf.status = out.status;
    if (out.witness) cf.colors = *out.witness;
    std::cout << icc3::emit_coloring(cf);
    switch (out.status) {
        case icc3::SolveStatus::Feasible: return kOk;
        case icc3::SolveStatus::Infeasible: return kInfeasible;
        case icc3::SolveStatus::Unknown: return kUnknown;
    }
    return kInternal;
}

int cmd_verify(const std::string& inst_path, const std::string& col_path) {
    icc3::Instance inst = icc3::parse_instance(read_file(inst_path));
    icc3::ColoringFile cf = icc3::parse_coloring(read_file(col_path));
    if (cf.status != icc3::SolveStatus::Feasible)
        throw icc3::InputError("coloring file does not contain a coloring");
    auto rep = icc3::verify(inst, cf.colors);
    std::cout << icc3::emit_report(rep);
    return rep.violated.empty() ? kOk : kInfeasible;
}

int cmd_encode(const std::string& map_path, const std::string& assignment_path,
               const std::string& out) {
    icc3::ReductionMap map = icc3::parse_map(read_file(map_path));
    icc3::Assignment a = icc3::parse_assignment(read_file(assignment_path), map.source.var_count);
    icc3::Coloring col = icc3::encode_coloring(map, a);
    write_file(out, icc3::emit_coloring({icc3::SolveStatus::Feasible, col}));
    std::cout << "encoded " << col.size() << " positions\n";
    return kOk;
}

int cmd_extract(const std::string& map_path, const std::string& col_path, bool lenient,
                const std::string& out) {
    icc3::ReductionMap map = icc3::parse_map(read_file(map_path));
    icc3::ColoringFile cf = icc3::parse_coloring(read_file(col_path));
    if (cf.status != icc3::SolveStatus::Feasible)
        throw icc3::InputError("coloring file does not contain a coloring");
    icc3::Assignment a = lenient ? icc3::majority_extract(map, cf.colors)
                                 : icc3::extract_assignment(map, cf.colors);
    std::string line = icc3::emit_assignment(a);
    std::cout << line;
    if (!out.empty()) write_file(out, line);
    return kOk;
}

int cmd_audit(const std::string& map_path, const std::string& inst_path,
              const std::string& col_path, long long trials, uint64_t seed) {
    std::string map_text = read_file(map_path);
    icc3::ReductionMap map = icc3::parse_map(map_text);
    icc3::Instance inst = icc3::parse_instance(read_file(inst_path));
    auto params = parse_gapparams(map_text, map.c_const);
    if (!params) throw icc3::InputError("map has no gap parameters; audit needs a --gap map");
    bool all_hold = true;
    auto run_one = [&](const icc3::Coloring& col) {
        auto rep = icc3::soundness_audit(map, inst, col, *params);
        std::cout << icc3::emit_audit(rep);
        if (!rep.holds) all_hold = false;
    };
    if (!col_path.empty()) {
        icc3::ColoringFile cf = icc3::parse_coloring(read_file(col_path));
        if (cf.status != icc3::SolveStatus::Feasible)
            throw icc3::InputError("coloring file does not contain a coloring");
        run_one(cf.colors);
    } else {
        icc3::Rng rng(seed);
        for (long long t = 0; t < trials; ++t) {
            icc3::Coloring col(inst.n);
            for (auto& c : col) c = static_cast<icc3::Color>(1 + rng.below(3));
            run_one(col);
        }
    }
    return all_hold ? kOk : kInternal;
}

int cmd_expander(int n, int degree, uint64_t seed, const std::string& target_h, bool check) {
    auto [g, cert] = icc3::build_expander(n, degree, icc3::Rational::parse(target_h), seed);
    std::cout << "e n " << g.n << " d " << cert.d << " method " << icc3::method_name(cert.method)
              << " h " << cert.h_bound.str() << "\n";
    if (check && g.n >= 2) {
        std::ostringstream os;
        os.setf(std::ios::fixed);
        os.precision(9);
        os << "e h_exact " << (cert.h_exact ? cert.h_exact->str() : std::string("none"))
           << " h_spectral " << cert.h_spectral << "\n";
        std::cout << os.str();
    }
    return kOk;
}

int cmd_gen_hdx(int chain, int fragments, int min_len, int max_len, uint64_t seed,
                const std::string& out, const std::string& witness) {
    auto [inst, hidden] = icc3::random_hdx_instance(chain, fragments, min_len, max_len, seed);
    std::string text = icc3::emit_instance(inst);
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    if (!witness.empty())
        write_file(witness, icc3::emit_coloring({icc3::SolveStatus::Feasible, hidden}));
    return kOk;
}

int cmd_gen_cnf(int vars, int clauses, uint64_t seed, const std::string& out,
                const std::string& plant_out) {
    auto [f, plant] = icc3::planted_random_3sat(vars, clauses, seed);
    std::string text = icc3::emit_dimacs(f);
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    if (!plant_out.empty()) write_file(plant_out, icc3::emit_assignment(plant));
    return kOk;
}

int cmd_roundtrip(const std::string& in, const std::string& assignment_path, bool gap, int degree,
                  const std::string& target_h, uint64_t seed, const std::string& eps0) {
    icc3::CnfFormula f = icc3::parse_dimacs(read_file(in));

    icc3::Instance inst;
    icc3::ReductionMap map;
    if (gap) {
        auto gr = icc3::gap_reduce(f, degree, icc3::Rational::parse(target_h), seed,
                                   icc3::Rational::parse(eps0));
        inst = std::move(gr.inst);
        map = std::move(gr.map);
    } else {
        auto [i, m] = icc3::reduce(f);
        inst = std::move(i);
        map = std::move(m);
    }
    std::cout << "r nodes " << inst.n << " intervals " << inst.intervals.size() << "\n";

    icc3::Assignment a;
    if (!assignment_path.empty()) {
        a = icc3::parse_assignment(read_file(assignment_path), f.var_count);
        if (!icc3::eval_unsat(f, a).empty())
            throw icc3::InputError("provided assignment does not satisfy the formula");
    } else {
        auto model = icc3::brute_force_sat(f);
        if (!model) {
            std::cout << "s INFEASIBLE\n";
            return kInfeasible;
        }
        a = *model;
    }

    icc3::Coloring col = icc3::encode_coloring(map, a);
    auto rep = icc3::verify(inst, col);
    std::cout << icc3::emit_report(rep);
    icc3::Assignment back = icc3::extract_assignment(map, col);
    std::cout << icc3::emit_assignment(back);
    bool ok = rep.violated.empty() && icc3::eval_unsat(f, back).empty();
    std::cout << (ok ? "roundtrip ok\n" : "roundtrip failed\n");
    return ok ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval constrained 3-coloring toolkit"};
    app.require_subcommand(1);

    std::string in, out, map_path, col_path, assignment_path, witness;
    std::string method = "backtrack", target_h = "1", eps0 = "1/8";
    bool gap = false, max_sat = false, lenient = false, check = false;
    int degree = 4, n = 0, chain = 0, fragments = 0, min_len = 1, max_len = 1, vars = 0,
        clauses = 0;
    uint64_t seed = 1, budget = icc3::kNoBudget;
    long long enumerate_limit = -1, trials = 1;

    auto* reduce = app.add_subcommand("reduce", "compile a 3-SAT formula into an instance");
    reduce->add_option("input", in, "DIMACS CNF input")->required();
    reduce->add_option("-o,--output", out, "instance output path")->required();
    reduce->add_option("--map", map_path, "reduction map output path")->required();
    reduce->add_flag("--gap", gap, "expander-linked gap construction");
    reduce->add_option("--degree", degree, "link degree (gap mode)");
    reduce->add_option("--target-h", target_h, "expansion target (rational)");
    reduce->add_option("--seed", seed, "construction seed");
    reduce->add_option("--eps0", eps0, "source gap constant (rational)");

    auto* solve = app.add_subcommand("solve", "decide feasibility / enumerate / maximize");
    solve->add_option("input", in, "instance input")->required();
    solve->add_option("--method", method, "backtrack|dpll");
    solve->add_option("--budget", budget, "search-node budget");
    solve->add_option("--enumerate", enumerate_limit, "print feasible colorings up to limit")
        ->check(CLI::PositiveNumber);
    solve->add_flag("--max-sat", max_sat, "maximize satisfied intervals (n <= 15)");

    auto* verify = app.add_subcommand("verify", "check a coloring against an instance");
    verify->add_option("instance", in, "instance input")->required();
    verify->add_option("coloring", col_path, "coloring input")->required();

    auto* encode = app.add_subcommand("encode", "assignment -> feasible coloring");
    encode->add_option("--map", map_path, "reduction map")->required();
    encode->add_option("--assignment", assignment_path, "assignment file")->required();
    encode->add_option("-o,--output", out, "coloring output path")->required();

    auto* extract = app.add_subcommand("extract", "coloring -> assignment");
    extract->add_option("--map", map_path, "reduction map")->required();
    extract->add_option("coloring", col_path, "coloring input")->required();
    extract->add_flag("--lenient", lenient, "majority extraction over non-broken clauses");
    extract->add_option("-o,--output", out, "assignment output path");

    auto* audit = app.add_subcommand("audit", "soundness accounting for gap instances");
    audit->add_option("--map", map_path, "reduction map")->required();
    audit->add_option("--inst", in, "instance input")->required();
    audit->add_option("--coloring", col_path, "coloring to audit");
    audit->add_option("--trials", trials, "number of random colorings");
    audit->add_option("--seed", seed, "trial seed");

    auto* expander = app.add_subcommand("expander", "build and certify an expander");
    expander->add_option("--n", n, "vertex count")->required();
    expander->add_option("--degree", degree, "degree");
    expander->add_option("--seed", seed, "seed");
    expander->add_option("--target-h", target_h, "expansion target (rational)");
    expander->add_flag("--check", check, "print exact and spectral certificates");

    auto* gen = app.add_subcommand("gen", "generators");
    gen->require_subcommand(1);
    auto* gen_hdx = gen->add_subcommand("hdx", "feasible fragment-uptake instance");
    gen_hdx->add_option("--chain", chain, "chain length")->required();
    gen_hdx->add_option("--fragments", fragments, "fragment count")->required();
    gen_hdx->add_option("--min-len", min_len, "minimum fragment length")->required();
    gen_hdx->add_option("--max-len", max_len, "maximum fragment length")->required();
    gen_hdx->add_option("--seed", seed, "seed")->required();
    gen_hdx->add_option("-o,--output", out, "instance output path");
    gen_hdx->add_option("--witness", witness, "hidden coloring output path");
    auto* gen_cnf = gen->add_subcommand("cnf", "planted satisfiable 3-SAT");
    gen_cnf->add_option("--vars", vars, "variable count")->required();
    gen_cnf->add_option("--clauses", clauses, "clause count")->required();
    gen_cnf->add_option("--seed", seed, "seed")->required();
    gen_cnf->add_option("-o,--output", out, "formula output path");
    gen_cnf->add_option("--plant", witness, "planted assignment output path");

    auto* roundtrip = app.add_subcommand("roundtrip", "reduce, encode, verify, extract");
    roundtrip->add_option("input", in, "DIMACS CNF input")->required();
    roundtrip->add_option("--assignment", assignment_path, "satisfying assignment file");
    roundtrip->add_flag("--gap", gap, "gap construction");
    roundtrip->add_option("--degree", degree, "link degree (gap mode)");
    roundtrip->add_option("--target-h", target_h, "expansion target");
    roundtrip->add_option("--seed", seed, "construction seed");
    roundtrip->add_option("--eps0", eps0, "source gap constant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (reduce->parsed())
            return cmd_reduce(in, out, map_path, gap, degree, target_h, seed, eps0);
        if (solve->parsed()) return cmd_solve(in, method, budget, enumerate_limit, max_sat);
        if (verify->parsed()) return cmd_verify(in, col_path);
        if (encode->parsed()) return cmd_encode(map_path, assignment_path, out);
        if (extract->parsed()) return cmd_extract(map_path, col_path, lenient, out);
        if (audit->parsed()) return cmd_audit(map_path, in, col_path, trials, seed);
        if (expander->parsed()) return cmd_expander(n, degree, seed, target_h, check);
        if (gen->parsed()) {
            if (gen_hdx->parsed())
                return cmd_gen_hdx(chain, fragments, min_len, max_len, seed, out, witness);
            if (gen_cnf->parsed()) return cmd_gen_cnf(vars, clauses, seed, out, witness);
        }
        if (roundtrip->parsed())
            return cmd_roundtrip(in, assignment_path, gap, degree, target_h, seed, eps0);
    } catch (const icc3::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const icc3::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const icc3::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const icc3::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
