#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mdem/material.hpp"
#include "mdem/tensor.hpp"

using namespace mdem;

namespace {

std::mt19937 rng(20240811u);

double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

Mat2 random_deformation(double spread = 0.4, double j_floor = 0.1) {
  for (;;) {
    Mat2 F{1.0 + uniform(-spread, spread), uniform(-spread, spread),
           uniform(-spread, spread), 1.0 + uniform(-spread, spread)};
    if (det(F) > j_floor) return F;
  }
}

Mat2 fd_stress(const Mat2& F, const MaterialParams& mat) {
  Mat2 P;
  double* out[4] = {&P.a11, &P.a12, &P.a21, &P.a22};
  const double* in[4] = {&F.a11, &F.a12, &F.a21, &F.a22};
  for (int e = 0; e < 4; ++e) {
    double h = 1e-6 * std::max(1.0, std::abs(*in[e]));
    Mat2 Fp = F, Fm = F;
    double* pp[4] = {&Fp.a11, &Fp.a12, &Fp.a21, &Fp.a22};
    double* pm[4] = {&Fm.a11, &Fm.a12, &Fm.a21, &Fm.a22};
    *pp[e] += h;
    *pm[e] -= h;
    double up = strain_energy(kinematics(Fp), mat);
    double um = strain_energy(kinematics(Fm), mat);
    *out[e] = (up - um) / (2.0 * h);
  }
  return P;
}

}  // namespace

TEST_CASE("deformation gradient from displacement gradient") {
  Mat2 zero{};
  Mat2 F = deformation_gradient(zero);
  CHECK(F.a11 == 1.0);
  CHECK(F.a12 == 0.0);
  CHECK(F.a21 == 0.0);
  CHECK(F.a22 == 1.0);

  Mat2 stretch{0.1, 0.0, 0.0, 0.0};
  F = deformation_gradient(stretch);
  CHECK(F.a11 == doctest::Approx(1.1));
  CHECK(F.a22 == 1.0);

  Mat2 shear{0.0, 0.3, 0.0, 0.0};
  F = deformation_gradient(shear);
  CHECK(F.a12 == 0.3);
  CHECK(F.a11 == 1.0);
}

TEST_CASE("kinematics of simple shear and biaxial stretch") {
  Mat2 shear{1.0, 0.3, 0.0, 1.0};
  auto s = kinematics(shear);
  CHECK(s.J == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.C.a11 == doctest::Approx(1.0));
  CHECK(s.C.a12 == doctest::Approx(0.3));
  CHECK(s.C.a21 == doctest::Approx(0.3));
  CHECK(s.C.a22 == doctest::Approx(1.09));

  Mat2 stretch{2.0, 0.0, 0.0, 1.0};
  s = kinematics(stretch);
  CHECK(s.J == doctest::Approx(2.0));
  CHECK(s.C.a11 == doctest::Approx(4.0));
  CHECK(s.C.a22 == doctest::Approx(1.0));
  CHECK(s.C.a12 == 0.0);
}

TEST_CASE("stored energy at reference and at uniaxial stretch") {
  MaterialParams shear_only{0.0, 1.0};
  MaterialParams bulk_only{1.0, 0.0};

  CHECK(strain_energy(kinematics(Mat2::identity()), shear_only) == 0.0);
  CHECK(strain_energy(kinematics(Mat2::identity()), bulk_only) == 0.0);

  Mat2 stretch{2.0, 0.0, 0.0, 1.0};
  CHECK(strain_energy(kinematics(stretch), shear_only) ==
        doctest::Approx(0.8068528194400547).epsilon(1e-12));
  CHECK(strain_energy(kinematics(stretch), bulk_only) ==
        doctest::Approx(0.4034264097200273).epsilon(1e-12));
}

TEST_CASE("energy is objective under superposed rotations") {
  MaterialParams mat{1.3, 0.7};
  for (int trial = 0; trial < 100; ++trial) {
    Mat2 F = random_deformation();
    double angle = uniform(0.0, 6.283185307179586);
    double c = std::cos(angle), sn = std::sin(angle);
    Mat2 Q{c, -sn, sn, c};
    double a = strain_energy(kinematics(F), mat);
    double b = strain_energy(kinematics(matmul(Q, F)), mat);
    CHECK(b == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("first Piola-Kirchhoff stress closed form") {
  MaterialParams shear_only{0.0, 1.0};
  MaterialParams bulk_only{1.0, 0.0};

  Mat2 P0 = first_pk_stress(Mat2::identity(), shear_only);
  CHECK(P0.a11 == 0.0);
  CHECK(P0.a12 == 0.0);
  CHECK(P0.a21 == 0.0);
  CHECK(P0.a22 == 0.0);
  P0 = first_pk_stress(Mat2::identity(), bulk_only);
  CHECK(frobenius_norm(P0) == 0.0);

  Mat2 stretch{2.0, 0.0, 0.0, 1.0};
  Mat2 P = first_pk_stress(stretch, shear_only);
  CHECK(P.a11 == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(P.a22 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(P.a12 == 0.0);
  CHECK(P.a21 == 0.0);

  P = first_pk_stress(stretch, bulk_only);
  CHECK(P.a11 == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(P.a22 == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("stress matches central differences of the energy") {
  for (int trial = 0; trial < 10000; ++trial) {
    MaterialParams mat{uniform(0.5, 2.0), uniform(0.3, 1.5)};
    Mat2 F = random_deformation();
    Mat2 P = first_pk_stress(F, mat);
    Mat2 diff = fd_stress(F, mat) - P;
    double rel = frobenius_norm(diff) / std::max(1e-8, frobenius_norm(P));
    CHECK(rel < 1e-6);
  }
}

TEST_CASE("stress rejects inverted states") {
  Mat2 inverted{1.0, 0.0, 0.0, -1.0};
  MaterialParams mat{1.0, 1.0};
  CHECK_THROWS_AS(strain_energy(kinematics(inverted), mat), NonPositiveJacobian);
  CHECK_THROWS_AS(first_pk_stress(inverted, mat), NonPositiveJacobian);
  CHECK_THROWS_AS(pk_stress_tangent(inverted, mat), NonPositiveJacobian);
}

TEST_CASE("tangent closed form at the reference state") {
  MaterialParams shear_only{0.0, 1.0};
  Tensor4 A = pk_stress_tangent(Mat2::identity(), shear_only);
  CHECK(A(0, 0, 0, 0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("tangent matches central differences of the stress") {
  for (int trial = 0; trial < 200; ++trial) {
    MaterialParams mat{uniform(0.5, 2.0), uniform(0.3, 1.5)};
    Mat2 F = random_deformation();
    Tensor4 A = pk_stress_tangent(F, mat);

    double max_rel = 0.0;
    double scale = 0.0;
    for (int e = 0; e < 16; ++e) scale = std::max(scale, std::abs(A.a[e]));
    const double* in[4] = {&F.a11, &F.a12, &F.a21, &F.a22};
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) {
        int e = k * 2 + l;
        double h = 1e-6 * std::max(1.0, std::abs(*in[e]));
        Mat2 Fp = F, Fm = F;
        double* pp[4] = {&Fp.a11, &Fp.a12, &Fp.a21, &Fp.a22};
        double* pm[4] = {&Fm.a11, &Fm.a12, &Fm.a21, &Fm.a22};
        *pp[e] += h;
        *pm[e] -= h;
        Mat2 dP = (1.0 / (2.0 * h)) * (first_pk_stress(Fp, mat) - first_pk_stress(Fm, mat));
        double cols[4] = {dP.a11, dP.a12, dP.a21, dP.a22};
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            max_rel = std::max(max_rel,
                               std::abs(cols[i * 2 + j] - A(i, j, k, l)) / scale);
      }
    CHECK(max_rel < 1e-5);
  }
}

TEST_CASE("tangent major symmetry") {
  for (int trial = 0; trial < 100; ++trial) {
    MaterialParams mat{uniform(0.5, 2.0), uniform(0.3, 1.5)};
    Mat2 F = random_deformation();
    Tensor4 A = pk_stress_tangent(F, mat);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            CHECK(std::abs(A(i, j, k, l) - A(k, l, i, j)) <= 1e-10);
  }
}

TEST_CASE("determinant of the adjugate inverse is consistent") {
  for (int trial = 0; trial < 100; ++trial) {
    Mat2 F = random_deformation();
    CHECK(det(F) * det(inverse(F)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("material parameters from engineering constants") {
  MaterialParams m = MaterialParams::from_youngs_poisson(1000.0, 0.3);
  CHECK(m.mu == doctest::Approx(1000.0 / 2.6).epsilon(1e-14));
  CHECK(m.lambda == doctest::Approx(1000.0 * 0.3 / (1.3 * 0.4)).epsilon(1e-14));
}

TEST_CASE("rank-four contraction") {
  Tensor4 A;
  for (int e = 0; e < 16; ++e) A.a[e] = double(e + 1);
  Mat2 H{1.0, 2.0, 3.0, 4.0};
  Mat2 R = contract(A, H);
  CHECK(R.a11 == doctest::Approx(1.0 + 4.0 + 9.0 + 16.0));
  CHECK(R.a22 == doctest::Approx(13.0 + 28.0 + 45.0 + 64.0));
}
