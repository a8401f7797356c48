#include <doctest.h>

#include <cmath>
#include <vector>

#include "spraywork/catalog.hpp"
#include "spraywork/geometry.hpp"
#include "spraywork/sampling.hpp"

namespace sw = spraywork;

namespace {

const sw::SprayModel& triangular_model() {
  return sw::catalog_get("triangular-family").model;
}

std::vector<sw::PointTM> sample3(int count, std::uint64_t seed) {
  sw::SampleSpec spec;
  spec.count = count;
  spec.seed = seed;
  return sw::sample_points(3, spec);
}

double frame_vec_norm(const sw::FrameVec& W) {
  double m = 0.0;
  for (const auto& c : W.comp) m = std::max(m, c.max_abs());
  return m;
}

}  // namespace

TEST_CASE("structural identities of the connection and curvature") {
  for (const auto& u : sample3(6, 31)) {
    sw::SprayGeometry G(triangular_model(), u, 5);
    CHECK(G.residual_phi_y() <= 1e-9);
    CHECK(G.residual_curvature_trace() <= 1e-9);

    // [delta_j, delta_k] must be vertical with components R^i_{jk}
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k) {
        sw::FrameVec br = sw::bracket(G.delta(j), G.delta(k));
        for (int i = 0; i < 3; ++i) {
          CHECK(br.comp[i].max_abs() <= 1e-9);
          sw::Jet diff = br.comp[3 + i] - G.R(i, j, k);
          CHECK(diff.max_abs() <= 1e-8);
        }
      }
  }
}

TEST_CASE("dynamical covariant derivative agrees with the coordinate formula") {
  // Independent oracle: for the endomorphism P = v o [S, Phi o h] o h,
  // P^k_j = S(Phi^k_j) + N^k_i Phi^i_j - Phi^k_i N^i_j in coordinates.
  for (const auto& u : sample3(4, 57)) {
    sw::SprayGeometry G(triangular_model(), u, 5);
    sw::FrameVec S = G.spray_field();
    for (int j = 0; j < 3; ++j) {
      sw::FrameVec X = G.delta(j);
      sw::FrameVec lhs = G.v_project(sw::bracket(S, G.apply_Phi(X))) -
                         G.apply_Phi(G.h_project(sw::bracket(S, X)));
      for (int k = 0; k < 3; ++k) {
        sw::Jet rhs = sw::lie(S, G.Phi(k, j));
        for (int i = 0; i < 3; ++i)
          rhs += G.N(k, i) * G.Phi(i, j) - G.Phi(k, i) * G.N(i, j);
        CHECK(lhs.comp[k].max_abs() <= 1e-8);
        sw::Jet diff = lhs.comp[3 + k] - rhs;
        CHECK(diff.max_abs() <= 1e-7 * (1.0 + rhs.max_abs()));
      }
    }
  }
}

TEST_CASE("canonical endomorphisms and projectors") {
  sw::PointTM u{{0.9, -0.4, 0.3}, {1.1, 0.7, -1.3}};
  sw::SprayGeometry G(triangular_model(), u, 5);
  sw::FrameVec S = G.spray_field();
  // J S = C, J C = 0, J^2 = 0, h + v = id
  sw::Jet zero;
  sw::FrameVec JS = G.apply_J(S);
  sw::FrameVec C = G.liouville_field();
  CHECK(frame_vec_norm(JS - C) <= 1e-12);
  CHECK(frame_vec_norm(G.apply_J(C)) <= 1e-12);
  for (int j = 0; j < 3; ++j) {
    sw::FrameVec X = G.coord_dx(j);
    CHECK(frame_vec_norm(G.apply_J(G.apply_J(X))) <= 1e-12);
    sw::FrameVec resid = G.h_project(X) + G.v_project(X) - X;
    CHECK(frame_vec_norm(resid) <= 1e-10);
    // horizontal projector reproduces the horizontal lift
    CHECK(frame_vec_norm(G.h_project(X) - G.delta(j)) <= 1e-10);
  }
}

TEST_CASE("eigenframe diagonalizes the Jacobi endomorphism as jets") {
  for (const auto& u : sample3(4, 73)) {
    sw::SprayGeometry G(triangular_model(), u, 6);
    G.build_eigenframe(1e-8, 1e-6);
    REQUIRE(G.has_eigenframe());
    CHECK(G.lambda0(0) <= G.lambda0(1));

    for (int a = 0; a < 3; ++a) {
      const std::vector<sw::Jet>& p = G.eigvec(a);
      for (int i = 0; i < 3; ++i) {
        sw::Jet resid = -(G.lambda(a) * p[i]);
        for (int j = 0; j < 3; ++j) resid += G.Phi(i, j) * p[j];
        CHECK(resid.max_abs() <= 1e-6 * (1.0 + p[i].max_abs()));
      }
    }
    // kernel slot: eigenvector y, eigenvalue identically zero,
    // h-lift = spray field, v-lift = radial field
    CHECK(G.lambda(2).max_abs() <= 1e-10);
    for (int i = 0; i < 3; ++i) {
      sw::Jet yi = sw::Jet::seed(3 + i, u.y[i], 6, G.eigvec(2)[i].order());
      CHECK((G.eigvec(2)[i] - yi).max_abs() <= 1e-10);
    }
    CHECK(frame_vec_norm(G.frame(2) - G.spray_field()) <= 1e-10);
    CHECK(frame_vec_norm(G.frame(5) - G.liouville_field()) <= 1e-10);
    // v_a = J h_a for every slot
    for (int a = 0; a < 3; ++a)
      CHECK(frame_vec_norm(G.apply_J(G.h_frame(a)) - G.v_frame(a)) <= 1e-8);
  }
}

TEST_CASE("frame expansion and bracket coefficients are consistent") {
  sw::PointTM u{{0.5, 0.2, -0.8}, {1.4, -0.6, 0.9}};
  sw::SprayGeometry G(triangular_model(), u, 6);
  G.build_eigenframe(1e-8, 1e-6);
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) {
      sw::FrameVec br = sw::bracket(G.frame(a), G.frame(b));
      const std::vector<sw::Jet>& co = G.bracket_coeffs(a, b);
      sw::FrameVec rebuilt = co[0] * G.frame(0);
      for (int k = 1; k < 6; ++k) rebuilt = rebuilt + co[k] * G.frame(k);
      CHECK(frame_vec_norm(rebuilt - br) <= 1e-6 * (1.0 + frame_vec_norm(br)));
    }
}

TEST_CASE("Jacobi identity of frame brackets") {
  sw::PointTM u{{-0.3, 0.6, 0.4}, {0.8, 1.2, -0.7}};
  sw::SprayGeometry G(triangular_model(), u, 6);
  G.build_eigenframe(1e-8, 1e-6);
  const int triples[][3] = {{0, 1, 2}, {0, 3, 4}, {1, 2, 5}, {0, 1, 4}};
  for (const auto& t : triples) {
    const sw::FrameVec &A = G.frame(t[0]), &B = G.frame(t[1]),
                       &C = G.frame(t[2]);
    sw::FrameVec sum = sw::bracket(sw::bracket(A, B), C) +
                       sw::bracket(sw::bracket(B, C), A) +
                       sw::bracket(sw::bracket(C, A), B);
    double scale = 1.0 + frame_vec_norm(A) * frame_vec_norm(B) *
                             frame_vec_norm(C);
    CHECK(frame_vec_norm(sum) <= 1e-6 * scale);
  }
}

TEST_CASE("degenerate spectra are refused by the eigenframe builder") {
  // At this point the two generic curvature eigenvalues coincide.
  sw::PointTM u{{1.0, 0.0, 0.0}, {1.0, -0.25, 1.0}};
  sw::SprayGeometry G(triangular_model(), u, 5);
  CHECK_THROWS_AS(G.build_eigenframe(1e-8, 1e-6), sw::EigenvalueCollision);
}
