#pragma once

#include <Eigen/Dense>

namespace dshell {

// Dense SVD through LAPACK (divide and conquer).
struct SvdResult {
  Eigen::VectorXd s;   // descending
  Eigen::MatrixXcd u;  // thin, present when vectors were requested
  Eigen::MatrixXcd v;
};

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a);
SvdResult svd(const Eigen::MatrixXcd& a);

}  // namespace dshell
