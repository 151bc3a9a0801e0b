#include "icc3/io.hpp"

#include <sstream>

namespace icc3 {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

long long to_int(const std::string& s, int lineno) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected integer, got '" + s + "'", lineno);
    }
}

}  // namespace

Instance parse_instance(const std::string& text) {
    Instance inst;
    bool have_header = false;
    int next_id = 1;
    auto lines = split_lines(text);
    for (size_t li = 0; li < lines.size(); ++li) {
        int ln = static_cast<int>(li) + 1;
        auto tok = tokens(lines[li]);
        if (tok.empty()) continue;
        if (tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (have_header) throw ParseError("duplicate header", ln);
            if (tok.size() != 4 || tok[1] != "icc") throw ParseError("malformed header", ln);
            inst.n = static_cast<int>(to_int(tok[2], ln));
            inst.k = static_cast<int>(to_int(tok[3], ln));
            if (inst.n < 0) throw ParseError("negative n in header", ln);
            if (inst.k != 3) throw ParseError("k must be 3", ln);
            have_header = true;
            continue;
        }
        if (tok[0] == "i") {
            if (!have_header) throw ParseError("interval before header", ln);
            if (tok.size() != 7) throw ParseError("interval line needs 6 fields", ln);
            Interval iv;
            iv.id = static_cast<int>(to_int(tok[1], ln));
            iv.lo = static_cast<int>(to_int(tok[2], ln));
            iv.hi = static_cast<int>(to_int(tok[3], ln));
            for (int c = 0; c < 3; ++c) iv.req[c] = static_cast<int>(to_int(tok[4 + c], ln));
            if (iv.id != next_id)
                throw ParseError("interval ids must be contiguous, expected " +
                                 std::to_string(next_id), ln);
            if (iv.lo > iv.hi) throw ParseError("interval with hi < lo", ln);
            if (iv.lo < 1 || iv.hi > inst.n) throw ParseError("interval outside [1,n]", ln);
            if (iv.req[0] < 0 || iv.req[1] < 0 || iv.req[2] < 0)
                throw ParseError("negative requirement count", ln);
            next_id++;
            inst.intervals.push_back(iv);
            continue;
        }
        throw ParseError("unknown line type '" + tok[0] + "'", ln);
    }
    if (!have_header) throw ParseError("missing header");
    return inst;
}

std::string emit_instance(const Instance& inst) {
    std::ostringstream os;
    os << "p icc " << inst.n << " " << inst.k << "\n";
    for (const Interval& iv : inst.intervals)
        os << "i " << iv.id << " " << iv.lo << " " << iv.hi << " " << iv.req[0] << " "
           << iv.req[1] << " " << iv.req[2] << "\n";
    return os.str();
}

ColoringFile parse_coloring(const std::string& text) {
    ColoringFile cf;
    bool have_status = false;
    auto lines = split_lines(text);
    for (size_t li = 0; li < lines.size(); ++li) {
        int ln = static_cast<int>(li) + 1;
        auto tok = tokens(lines[li]);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "s") {
            if (tok.size() != 2) throw ParseError("malformed status line", ln);
            if (tok[1] == "FEASIBLE") cf.status = SolveStatus::Feasible;
            else if (tok[1] == "INFEASIBLE") cf.status = SolveStatus::Infeasible;
            else if (tok[1] == "UNKNOWN") cf.status = SolveStatus::Unknown;
            else throw ParseError("unknown status '" + tok[1] + "'", ln);
            have_status = true;
            continue;
        }
        if (tok[0] == "v") {
            for (size_t i = 1; i < tok.size(); ++i) {
                long long v = to_int(tok[i], ln);
                if (v < 1 || v > 3)
                    throw ParseError("color code " + std::to_string(v) + " outside alphabet", ln);
                cf.colors.push_back(static_cast<Color>(v));
            }
            continue;
        }
        throw ParseError("unknown line type '" + tok[0] + "'", ln);
    }
    if (!have_status) throw ParseError("missing status line");
    return cf;
}

std::string emit_coloring(const ColoringFile& cf) {
    std::ostringstream os;
    switch (cf.status) {
        case SolveStatus::Feasible: {
            os << "s FEASIBLE\nv";
            for (Color c : cf.colors) os << " " << code(c);
            os << "\n";
            break;
        }
        case SolveStatus::Infeasible: os << "s INFEASIBLE\n"; break;
        case SolveStatus::Unknown: os << "s UNKNOWN\n"; break;
    }
    return os.str();
}

VerifyReport parse_report(const std::string& text) {
    auto lines = split_lines(text);
    for (size_t li = 0; li < lines.size(); ++li) {
        int ln = static_cast<int>(li) + 1;
        auto tok = tokens(lines[li]);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] != "r" || tok.size() < 4 || tok[1] != "satisfied" || tok[3] != "violated")
            throw ParseError("malformed report line", ln);
        VerifyReport rep;
        rep.satisfied_count = static_cast<int>(to_int(tok[2], ln));
        for (size_t i = 4; i < tok.size(); ++i)
            rep.violated.push_back(static_cast<int>(to_int(tok[i], ln)));
        return rep;
    }
    throw ParseError("missing report line");
}

std::string emit_report(const VerifyReport& rep) {
    std::ostringstream os;
    os << "r satisfied " << rep.satisfied_count << " violated";
    for (int id : rep.violated) os << " " << id;
    os << "\n";
    return os.str();
}

}  // namespace icc3
