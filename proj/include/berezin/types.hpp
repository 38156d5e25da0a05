#ifndef BEREZIN_TYPES_HPP
#define BEREZIN_TYPES_HPP

#include <complex>
#include <Eigen/Dense>

namespace berezin {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

}

#endif
