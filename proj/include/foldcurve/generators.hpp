#pragma once

#include <string>
#include <vector>

#include "foldcurve/curve.hpp"

namespace foldcurve {

/// C_s in dimension n: D_1 = [0,e1], D_{s+1} = (D_s, [e_s, e_s+e_{s+1}], e_{s+1} + reversed D_s),
/// C_s = (D_s, [e_s, 2e_s]).  Oriented from 0.
Curve build_seed(int s, int n);

enum class Fold { L, R };

std::vector<Fold> parse_folds(const std::string& word);

/// Paperfolding unfolding.  Turn word T_0 = () and
/// T_{k+1} = T_k, f_{k+1}, reverse(complement(T_k)); the curve starts at the
/// origin heading e1 and turns left on L.
Curve unfold(const std::vector<Fold>& folds);
Curve positive_folding(int s);
Curve alternate_folding(int s);

}  // namespace foldcurve
