#pragma once

#include "exmeasure/completion.hpp"
#include "exmeasure/premeasure.hpp"
#include "exmeasure/simple_function.hpp"

#include <string>

namespace exm {

/**
 * JSON wire formats for the command-line front end.
 *
 * Space description:
 *     {"ground_set": ["a","b","c"],
 *      "measure": {"type": "dirac", "point": "a"}}
 *     {"ground_set": ["a","b"],
 *      "measure": {"type": "weighted",
 *                  "weights": {"a": "1/2", "b": "1/3"}}}
 *     {"ground_set": ["a"],
 *      "measure": {"type": "table",
 *                  "family": [["1","0"], ["0","1"]],
 *                  "values": ["1", "0"],
 *                  "name": "hand-built"}}
 *
 * The table form lists each complemented subset as a [positive, negative]
 * pair of masks and assigns measures positionally; only well-formedness
 * is validated, so axiom-violating tables parse fine and are left for
 * the checker to expose.
 *
 * Simple-function literal: a list of [coefficient, mask] pairs where the
 * mask is a 0/1 string read left to right in ground_set order, naming
 * the indicator of that subset:
 *     [["2","100"], ["3","010"]]
 *
 * Representation literal:
 *     {"support": [simple-function literal, ...]}
 *     {"geometric": {"base": simple-function literal, "ratio": "1/2"}}
 *
 * Every parse failure throws std::invalid_argument with a message that
 * names the offending field.
 */

SpacePtr space_from_json(const std::string& text);

SimpleFunction simple_from_json(const SpacePtr& space, const std::string& text);

Representation rep_from_json(const SpacePtr& space, const std::string& text);

// Exact rational, canonical "p/q" (or plain "p" for integers).
std::string print_rational(const Rational& q);

// "a ± 2^-p" with |a - x| <= 2^-p guaranteed: the approximation is taken
// at p+1 and a is the simplest rational in the remaining slack, so round
// values print as themselves.
std::string print_real(const ModulatedReal& x, long p);

}  // namespace exm
