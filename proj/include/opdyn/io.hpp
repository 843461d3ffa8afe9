#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "opdyn/criterion.hpp"
#include "opdyn/exppoly.hpp"
#include "opdyn/levelset.hpp"
#include "opdyn/symbol.hpp"
#include "opdyn/witness.hpp"

namespace opdyn {

// Complex literals: "1.5", "2i", "-1.5+2i", "1e-3-2.5i", "i", "-i".
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

// Symbol literals: cos | sin | zexp | exp | exp-a:<c> | poly:[c0,c1,...]
// | scaled:<symbol>:<c> | rose.
Symbol parse_symbol(const std::string& literal);

// Arc dump, columns x, y, |phi|, curvature.  phi may be null (the |phi|
// column then repeats the stored level).
void write_arc_csv(std::ostream& os, const LevelArc& arc, const Symbol* phi);

// ExpPoly as a list of {re_exp, im_exp, re_coef, im_coef} records.
std::string exppoly_to_json(const ExpPoly& f);
ExpPoly exppoly_from_json(const std::string& text);

std::string report_to_json(const CriterionReport& report, const std::string& symbol_literal);

// Witness problem files: {"symbol", "m", "r", "rho", "lambda", "gamma", "a", "b"}.
std::string problem_to_json(const WitnessProblem& problem);
WitnessProblem problem_from_json(const std::string& text);

// Per-q rows: q, ||R|| (sampled, crude), per-j norms, residual norms.
void write_witness_csv(std::ostream& os, const std::vector<WitnessStep>& trace);

}  // namespace opdyn
