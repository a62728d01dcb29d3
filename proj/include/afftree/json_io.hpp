#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "afftree/affine.hpp"
#include "afftree/matrix.hpp"
#include "afftree/mealy.hpp"
#include "afftree/virtual_endo.hpp"

namespace afftree::json_io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "affine-trees/1";

/// Digit string; letters >= 10 are written as comma-separated numbers.
std::string word_to_string(const Word& w, int d);
/// Inverse of word_to_string. Throws ParseError on letters outside [0, d).
Word word_from_string(const std::string& text, int d);

Json to_json(const EpSeq& s);
EpSeq epseq_from_json(const Json& j, int modulus);

/// {"d", "base_rows", "template_rows"} with rows in from-diagonal EpSeq syntax.
Json to_json(const DiagPeriodicMatrix& A);
DiagPeriodicMatrix matrix_from_json(const Json& j);

/// {"d", "A", "b"}.
Json to_json(const AffineAutomorphism& p);
AffineAutomorphism affine_from_json(const Json& j);

Json to_json(const AffineRefutation& r, int d);

/// {"d", "states": [{"name", "sections", "perm"}]}; state 0 is the start.
/// Names default to q0, q1, ...
Json to_json(const MealyMachine& m, const std::vector<std::string>& names = {});
Json to_json(const TreeAutomorphism& g);
MealyMachine machine_from_json(const Json& j);

/// {"d", "depth", "levels": [[perm, ...], ...]}.
Json to_json(const Portrait& p);

Json to_json(const LevelPermutations& s);

Json to_json(const LamplighterElement& g);

}  // namespace afftree::json_io
