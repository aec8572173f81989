#pragma once

// The 2-cycle sigma_L, the 3-chain t_L with d t_L = sigma_L and the resulting
// class in H_3(L / L_{>= k+1}).

#include "stringlink/koszul.hpp"
#include "stringlink/linalg.hpp"
#include "stringlink/milnor.hpp"
#include "stringlink/tree_diagram.hpp"

namespace stringlink {

struct MoritaInput {
  LinkData data;
  Expansion theta;
  int k;
};

/// Checks that the input lies in filtration level k+1 (Y_i vanish through
/// degree k). Throws FiltrationError otherwise.
MoritaInput make_morita_input(const LinkData& data, const Expansion& theta, int k);
MoritaInput make_morita_input(const LongitudeTuple& data, const Expansion& theta, int k);
MoritaInput make_morita_input(const BraidWord& braid, const Expansion& theta, int k);

/// sum_i sum_l X_i ^ Y_i^(l) over L / L_{>= c+1}, l in [k+1, c]. Needs theta
/// of truncation >= c + 1.
ExteriorChain sigma_to_class(const MoritaInput& input, int c);
/// sigma_to_class(input, 2k+1).
ExteriorChain sigma(const MoritaInput& input);

/// A 3-chain t with d t = target, degree by degree. Throws PreconditionError
/// when target is not a cycle or not a boundary.
ExteriorChain solve_boundary(const ExteriorChain& target, PivotOrder order = PivotOrder::Forward);

/// Class of t_L reduced to Lambda^3(L / L_{>= k+1}).
HomologyClass morita_milnor(const MoritaInput& input, PivotOrder order = PivotOrder::Forward);

struct DiagramCheck {
  bool commutes = false;
  HomologyClass via_trees;
  HomologyClass via_morita;
};

/// Compares phi_class(eta^-1(mu_[k+1, 2k])) with morita_milnor(input).
DiagramCheck verify_commutative_diagram(const MoritaInput& input);

/// eta of the degree-(k+1) tree component of Phi^-1(x), x in
/// H_3(L / L_{>= k+1}).
HTensorLie d2_composition(const HomologyClass& x, int k);

}  // namespace stringlink
