#pragma once

#include <optional>
#include <string>

#include "icc3/core.hpp"

namespace icc3 {

enum class SolveStatus { Feasible, Infeasible, Unknown };

struct ColoringFile {
    SolveStatus status = SolveStatus::Unknown;
    Coloring colors;  // meaningful only when status == Feasible
};

// ICC instance format: optional "c ..." comments, header "p icc <n> <k>",
// then "i <id> <lo> <hi> <r1> <r2> <r3>" lines with ids contiguous from 1.
Instance parse_instance(const std::string& text);
std::string emit_instance(const Instance& inst);

// "s FEASIBLE" + "v <c1> ... <cn>", or "s INFEASIBLE" / "s UNKNOWN"
ColoringFile parse_coloring(const std::string& text);
std::string emit_coloring(const ColoringFile& cf);

// "r satisfied <count> violated <id...>"
VerifyReport parse_report(const std::string& text);
std::string emit_report(const VerifyReport& rep);

}  // namespace icc3
