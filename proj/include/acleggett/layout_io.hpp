#pragma once

// File formats: layout JSON, CHSH settings JSON and the per-path phase CSV.
//
// Layout JSON:
//   {
//     "charge": {"position": [x, y], "k": 1.0},
//     "points": {"O12": [x, y], "O34": [x, y], "A": [x, y], "B": [x, y]},
//     "paths":  {"l1": [[x, y], ...], "l2": [...], "l3": [...], "l4": [...]},
//     "exclusion_radius": 0.001          (optional)
//   }
//
// CHSH settings JSON: {"a": S, "a_prime": S, "b": S, "b_prime": S} where S is
// either [x, y, z] (unit vector) or {"theta": t, "phi": p}.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "acleggett/geometry.hpp"
#include "acleggett/inequalities.hpp"

namespace acleggett {

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

Layout parse_layout(const std::string& json_text);
Layout load_layout(const std::string& path);

ChshSettings parse_chsh_settings(const std::string& json_text);
ChshSettings load_chsh_settings(const std::string& path);

/// Columns: path_id, phase_numeric, phase_analytic, abs_diff, winding. Rows l1..l4
/// carry whole turns of each open path; the final "loop" row is the combined loop.
void write_phase_csv(std::ostream& out, const Layout& layout, const LayoutPhases& phases);

}  // namespace acleggett
