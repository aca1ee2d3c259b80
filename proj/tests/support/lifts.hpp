#pragma once

// Existence of lifts along a small extension decided by a single linear
// solve over B. Lifts of x differ from the designated one by elements of
// L ⊗ J, and brackets with J vanish, so the MC equations become linear.

#include "mcdeform/maurer_cartan.hpp"

namespace oracle {

bool single_lift_exists(const mcdeform::SmallExtension& e, const mcdeform::DglaPtr& l, const mcdeform::Vector& x);

bool pair_lift_exists(const mcdeform::SmallExtension& e, const mcdeform::DglaMorphism& h,
                      const mcdeform::DglaMorphism& g, const mcdeform::McTriple& t);

}  // namespace oracle
