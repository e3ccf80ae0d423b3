#pragma once

// Independent reference implementations used only by the tests.

#include <array>
#include <cstdint>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "skinrecon/boussinesq.hpp"
#include "skinrecon/fme.hpp"
#include "skinrecon/love.hpp"
#include "skinrecon/sensor.hpp"

namespace oracle {

/// Point-load displacement evaluated in 50-digit arithmetic, rounded to double.
skinrecon::Vec3 point_displacement_hp(skinrecon::Vec3 F, skinrecon::Vec3 r, double E);

/// Effective block (surface minus depth h) from 50-digit point-load
/// evaluations; block[i][j] is component i per unit force j.
std::array<std::array<double, 3>, 3> effective_block_hp(skinrecon::Vec2 d, double h, double E);

/// 50-digit approximate-solution normal displacement.
double approx_normal_hp(double Fz, double area, double h, double E, bool exact_psi);

/// h_c solving dC = k (h_n - h_c) / (h_c h_n) by bisection on (0, h_n].
double thickness_bisection(double delta_c, double k, double h_n);

/// Love displacement assembled from central differences of the quadrature
/// potentials (step `step` in metres).
skinrecon::Vec3 love_from_potentials(double p, skinrecon::CellExtent cell, skinrecon::Vec3 pt,
                                     const skinrecon::ElastomerParams& params, double step);

/// Exhaustive NNLS: least squares on every subset of columns, keeping the
/// best non-negative candidate.
Eigen::VectorXd nnls_brute_force(const Eigen::MatrixXd& C, const Eigen::VectorXd& d);

/// Integer lattice search over [-10, 10]^3 with step 0.01 for a 3-variable
/// system with integer data. Returns true if some lattice point satisfies
/// every row with the bounds shifted by `shift` * ||a||_2 (positive shrinks
/// the feasible set, negative enlarges it).
bool grid_feasible(const skinrecon::InequalitySystem<double>& sys, double shift);

/// Robust lattice verdict: feasible if the shrunk system has a lattice point,
/// infeasible if the enlarged one has none, nullopt when the margins disagree
/// (the region is too thin for the lattice to decide).
std::optional<bool> grid_feasibility_verdict(const skinrecon::InequalitySystem<double>& sys, double margin = 0.02);

/// Random 3-variable system with small integer data plus the box rows
/// -10 <= x_i <= 10.
skinrecon::InequalitySystem<double> random_box_system(std::mt19937_64& rng);

}  // namespace oracle
