#pragma once

#include "igraph.hpp"
#include "influence.hpp"
#include "network.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace crn {

// Network text:
//   # comment
//   @species A B C          (optional; fixes the species order)
//   r1: 2 A + B -> C        ("→" works as well; "0" is the zero complex)
// Species not declared are appended in order of first appearance.
Network parse_network(std::string_view text);

// Canonical form; parse_network(print_network(n)) == n.
std::string print_network(const Network& net);

// Influence text: an optional base keyword (@complex, @reaction, @zero)
// followed by lines "r1: A:+ B:- C:0". Explicit entries override the base;
// assigning one entry twice with different signs is an error.
InfluenceSpec parse_influence(std::string_view text, const Network& net);
std::string print_influence(const InfluenceSpec& i, const Network& net);

// Kinetic-order text: optional @mass-action base, then "r1: A=1 B=-1/2".
// With an influence given, every entry's sign must match it.
KineticOrder parse_order(std::string_view text, const Network& net, const std::optional<InfluenceSpec>& i = {});

// Rows of "-", "0", "+" (or -1, 0, 1); row j lists the labels of edges j -> i.
InteractionGraph parse_sign_matrix(std::string_view text);

// Lines "i: j:1 k:2" with 1-based node numbers; j:1 puts j in H1(i).
Partition parse_partition(std::string_view text, const InteractionGraph& g);

// Influence argument of the CLI: "@complex" and friends, or a file's text.
InfluenceSpec influence_argument(const std::string& arg, const Network& net);

std::string read_file(const std::string& path);

}  // namespace crn
