#pragma once

#include <string>

namespace acleggett {

/// Decimal text with 12 significant digits ("%.12g"); non-finite values print as "nan"/"inf".
std::string format_number(double value);

/// Rounds to 12 significant digits so that JSON emitters print the same digits as CSV.
double round_significant(double value);

}  // namespace acleggett
