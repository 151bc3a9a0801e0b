#include "icc3/cnf.hpp"

#include <algorithm>
#include <sstream>

#include "icc3/rng.hpp"

namespace icc3 {

namespace {

constexpr int kBruteCap = 24;

void check_clause_vars(const Clause& cl, int p, int lineno) {
    for (const Literal& l : cl.lits) {
        if (l.var < 1) throw ParseError("variable index must be >= 1", lineno);
        if (l.var > p)
            throw ParseError("variable " + std::to_string(l.var) + " exceeds declared count " +
                             std::to_string(p), lineno);
    }
    if (cl.lits[0].var == cl.lits[1].var || cl.lits[0].var == cl.lits[2].var ||
        cl.lits[1].var == cl.lits[2].var)
        throw ParseError("duplicate variable within a clause", lineno);
}

// assignment from counter bits, x1 most significant, false < true
Assignment from_counter(uint64_t m, int p) {
    Assignment a;
    a.values.resize(p);
    for (int v = 1; v <= p; ++v) a.values[v - 1] = (m >> (p - v)) & 1;
    return a;
}

}  // namespace

CnfFormula parse_dimacs(const std::string& text) {
    CnfFormula f;
    bool have_header = false;
    int declared_clauses = 0;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    std::vector<int> pending;
    int pending_line = 0;
    while (std::getline(is, line)) {
        ++ln;
        std::istringstream ls(line);
        std::string t0;
        if (!(ls >> t0)) continue;
        if (t0 == "c") continue;
        if (t0 == "p") {
            std::string kind;
            if (have_header || !(ls >> kind) || kind != "cnf" || !(ls >> f.var_count) ||
                !(ls >> declared_clauses))
                throw ParseError("malformed DIMACS header", ln);
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError("clause before header", ln);
        if (pending.empty()) pending_line = ln;
        std::istringstream cls(line);
        std::string tok;
        while (cls >> tok) {
            long long lit;
            try {
                size_t used = 0;
                lit = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("expected literal, got '" + tok + "'", ln);
            }
            if (lit == 0) {
                if (pending.size() != 3)
                    throw ParseError("clause must have exactly 3 literals", pending_line);
                Clause cl;
                for (int i = 0; i < 3; ++i)
                    cl.lits[i] = Literal{std::abs(pending[i]), pending[i] < 0};
                check_clause_vars(cl, f.var_count, pending_line);
                f.clauses.push_back(cl);
                pending.clear();
            } else {
                if (lit > INT32_MAX || lit < INT32_MIN) throw ParseError("literal overflow", ln);
                pending.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!have_header) throw ParseError("missing DIMACS header");
    if (!pending.empty()) throw ParseError("unterminated clause", pending_line);
    if (declared_clauses != static_cast<int>(f.clauses.size()))
        throw ParseError("declared clause count " + std::to_string(declared_clauses) +
                         " does not match " + std::to_string(f.clauses.size()));
    return f;
}

std::string emit_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    os << "p cnf " << f.var_count << " " << f.clauses.size() << "\n";
    for (const Clause& cl : f.clauses) {
        for (const Literal& l : cl.lits) os << (l.negated ? -l.var : l.var) << " ";
        os << "0\n";
    }
    return os.str();
}

Assignment parse_assignment(const std::string& text, int var_count) {
    std::istringstream is(text);
    std::string t;
    if (!(is >> t) || t != "a") throw ParseError("assignment line must start with 'a'");
    Assignment a;
    a.values.assign(var_count, false);
    std::vector<bool> seen(var_count, false);
    long long lit;
    bool terminated = false;
    while (is >> lit) {
        if (lit == 0) {
            terminated = true;
            break;
        }
        int v = static_cast<int>(std::abs(lit));
        if (v < 1 || v > var_count)
            throw ParseError("assignment variable " + std::to_string(v) + " out of range");
        a.values[v - 1] = lit > 0;
        seen[v - 1] = true;
    }
    if (!terminated) throw ParseError("assignment line missing terminating 0");
    for (int v = 1; v <= var_count; ++v)
        if (!seen[v - 1]) throw ParseError("assignment missing variable " + std::to_string(v));
    return a;
}

std::string emit_assignment(const Assignment& a) {
    std::ostringstream os;
    os << "a";
    for (size_t i = 0; i < a.values.size(); ++i)
        os << " " << (a.values[i] ? static_cast<int>(i + 1) : -static_cast<int>(i + 1));
    os << " 0\n";
    return os.str();
}

std::vector<int> eval_unsat(const CnfFormula& f, const Assignment& a) {
    std::vector<int> out;
    for (size_t i = 0; i < f.clauses.size(); ++i) {
        const Clause& cl = f.clauses[i];
        bool sat = a.eval(cl.lits[0]) || a.eval(cl.lits[1]) || a.eval(cl.lits[2]);
        if (!sat) out.push_back(static_cast<int>(i) + 1);
    }
    return out;
}

std::pair<CnfFormula, Assignment> planted_random_3sat(int p, int q, uint64_t seed) {
    if (p < 3) throw InputError("planted generator needs p >= 3");
    Rng rng(seed);
    Assignment plant;
    plant.values.resize(p);
    for (int v = 0; v < p; ++v) plant.values[v] = rng.coin();

    CnfFormula f;
    f.var_count = p;
    for (int i = 0; i < q; ++i) {
        for (;;) {
            int a = static_cast<int>(rng.range(1, p));
            int b = static_cast<int>(rng.range(1, p));
            int c = static_cast<int>(rng.range(1, p));
            if (a == b || a == c || b == c) continue;
            Clause cl;
            cl.lits[0] = Literal{a, rng.coin()};
            cl.lits[1] = Literal{b, rng.coin()};
            cl.lits[2] = Literal{c, rng.coin()};
            bool sat = plant.eval(cl.lits[0]) || plant.eval(cl.lits[1]) || plant.eval(cl.lits[2]);
            if (!sat) continue;
            f.clauses.push_back(cl);
            break;
        }
    }
    return {std::move(f), std::move(plant)};
}

std::optional<Assignment> brute_force_sat(const CnfFormula& f) {
    if (f.var_count > kBruteCap)
        throw CapacityError("brute_force_sat capacity is p <= " + std::to_string(kBruteCap));
    int p = f.var_count;
    for (uint64_t m = 0; m < (1ull << p); ++m) {
        Assignment a = from_counter(m, p);
        if (eval_unsat(f, a).empty()) return a;
    }
    return std::nullopt;
}

std::pair<Assignment, int> max_sat_brute(const CnfFormula& f) {
    if (f.var_count > kBruteCap)
        throw CapacityError("max_sat_brute capacity is p <= " + std::to_string(kBruteCap));
    int p = f.var_count;
    int q = static_cast<int>(f.clauses.size());
    Assignment best = from_counter(0, p);
    int best_count = q - static_cast<int>(eval_unsat(f, best).size());
    for (uint64_t m = 1; m < (1ull << p); ++m) {
        Assignment a = from_counter(m, p);
        int count = q - static_cast<int>(eval_unsat(f, a).size());
        if (count > best_count) {
            best_count = count;
            best = a;
        }
    }
    return {best, best_count};
}

}  // namespace icc3
