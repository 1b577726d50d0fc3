#pragma once

#include <array>

namespace fklab {

/// p* = (1-p)q / ((1-p)q + p).
double dual_parameter(double p, double q);

/// sqrt(q) / (1 + sqrt(q)).
double self_dual_point(double q);

struct CriticalSolution {
  double q = 1.0;
  double y_c = 0.0;
  double p_c = 0.0;
  double residual = 0.0;
};

/// Positive root of y^3 + 3y^2 - q.
CriticalSolution triangular_critical(double q);

/// Root of y^3 - 3qy - q^2 above sqrt(3q).
CriticalSolution hexagonal_critical(double q);

/// Probabilities of the five partitions of three terminals, in the order
/// {a|b|c}, {ab|c}, {ac|b}, {bc|a}, {abc}.
using PartitionLaw = std::array<double, 5>;

/// Triangle gadget: three terminal edges at p.
PartitionLaw triangle_partition_law(double p, double q);
/// Star gadget: a centre joined to the three terminals, edges at p.
PartitionLaw star_partition_law(double p, double q);

struct StarTriangleReport {
  double q = 1.0;
  double p_triangle = 0.0;
  double p_star = 0.0;
  PartitionLaw triangle{};
  PartitionLaw star{};
  double max_deviation = 0.0;
};

/// Triangle at p_triangle against the star at dual_parameter(p_triangle, q).
StarTriangleReport star_triangle_compare(double p_triangle, double q);

/// star_triangle_compare at the triangular critical point.
StarTriangleReport star_triangle_check(double q);

}  // namespace fklab
