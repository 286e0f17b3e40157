#pragma once

#include <vector>

#include "tdpair/linalg.hpp"

namespace tdpair {

struct EigenData {
    Scalar eigenvalue;
    Subspace eigenspace;
    Matrix idempotent;
    unsigned algebraic_multiplicity;
};

struct SpectralDecomposition {
    Matrix op;
    // Ascending by eigenvalue (the field's canonical order).
    std::vector<EigenData> eigens;
};

// Throws NotSplit or NotDiagonalizable. Idempotents come from the product
// formula E_i = prod_{j != i} (A - th_j I) / (th_i - th_j).
SpectralDecomposition diagonalize(const Matrix& a);

// Sum E_i = I, E_i E_j = delta_ij E_i, A E_i = E_i A = th_i E_i.
bool verify_idempotent_identities(const SpectralDecomposition& sd);

// Sum of the eigenspaces of the listed idempotents (index range [lo, hi]).
Subspace eigenspace_sum(const std::vector<EigenData>& eigens, long lo, long hi, std::size_t n);

}  // namespace tdpair
