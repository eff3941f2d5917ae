#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace graphssr {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a graph violates the cluster/connectivity assumptions.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

enum class Execution { serial, parallel };

}  // namespace graphssr
