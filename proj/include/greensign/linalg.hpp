#pragma once
#include <Eigen/Dense>

namespace greensign {

// det(B) / prod_i ||row_i||, in [-1, 1]; zero rows give 0.
double normalized_determinant(const Eigen::MatrixXd& B);

} // namespace greensign
