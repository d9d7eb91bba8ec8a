#include <gtest/gtest.h>

#include "balsa/grid.hpp"

using namespace balsa;

TEST(GridSpec, CentersAndInterfaces) {
  GridSpec1D g(0.0, 1.0, 10);
  EXPECT_DOUBLE_EQ(g.dx, 0.1);
  EXPECT_DOUBLE_EQ(g.x_center(0), 0.05);
  EXPECT_DOUBLE_EQ(g.x_iface(0), 0.0);
  EXPECT_DOUBLE_EQ(g.x_iface(10), 1.0);
  EXPECT_DOUBLE_EQ(g.x_quarter(3, -1), 0.3 + 0.025);
  EXPECT_THROW(GridSpec1D(1.0, 0.0, 10), config_error);
  EXPECT_THROW(GridSpec1D(0.0, 1.0, 0), config_error);
}

TEST(FillGhosts, FreeIsZeroOrderExtrapolation) {
  Field1D<Vec<1>> f(3);
  f(0) = {1.0};
  f(1) = {2.0};
  f(2) = {3.0};
  fill_ghosts(f, free_boundaries<1>());
  for (int k = 1; k <= kGhostWidth; ++k) {
    EXPECT_DOUBLE_EQ(f(-k)[0], 1.0);
    EXPECT_DOUBLE_EQ(f(2 + k)[0], 3.0);
  }
}

TEST(FillGhosts, FrozenGhostsLeftUntouched) {
  Field1D<Vec<1>> f(6);
  for (int j = -kGhostWidth; j < 6 + kGhostWidth; ++j) f(j) = {double(j)};
  fill_ghosts(f, frozen_boundaries<1>());
  for (int j = -kGhostWidth; j < 6 + kGhostWidth; ++j) EXPECT_DOUBLE_EQ(f(j)[0], double(j));
}

TEST(FillGhosts, ReflectingMirrorsMomentumOdd) {
  Field1D<Vec<2>> f(6);
  for (int j = 0; j < 6; ++j) f(j) = {double(j + 1), 0.5 * (j + 1)};
  BoundaryCondition1D<2> bc;
  bc.left.kind = {BcKind::ReflectEven, BcKind::ReflectOdd};
  bc.right.kind = {BcKind::ReflectEven, BcKind::ReflectOdd};
  fill_ghosts(f, bc);
  for (int k = 0; k < kGhostWidth; ++k) {
    EXPECT_DOUBLE_EQ(f(-1 - k)[0], f(k)[0]);
    EXPECT_DOUBLE_EQ(f(-1 - k)[1], -f(k)[1]);
    EXPECT_DOUBLE_EQ(f(6 + k)[0], f(5 - k)[0]);
    EXPECT_DOUBLE_EQ(f(6 + k)[1], -f(5 - k)[1]);
  }
}

TEST(FillGhosts, FixedHoldsValueOtherComponentFree) {
  Field1D<Vec<2>> f(6);
  for (int j = 0; j < 6; ++j) f(j) = {1.5 + j, 0.25};
  BoundaryCondition1D<2> bc;
  bc.left.kind = {BcKind::Free, BcKind::Fixed};
  bc.left.value[1] = 4.42;
  fill_ghosts(f, bc);
  for (int k = 1; k <= kGhostWidth; ++k) {
    EXPECT_DOUBLE_EQ(f(-k)[0], 1.5);   // copied from the first interior cell
    EXPECT_DOUBLE_EQ(f(-k)[1], 4.42);  // prescribed inflow discharge
  }
}

TEST(FillGhosts, IdempotentOnInterior) {
  Field1D<Vec<1>> f(8);
  for (int j = 0; j < 8; ++j) f(j) = {std::sin(1.0 + j)};
  const auto copy_interior = [&] {
    std::vector<double> v;
    for (int j = 0; j < 8; ++j) v.push_back(f(j)[0]);
    return v;
  };
  const auto before = copy_interior();
  fill_ghosts(f, free_boundaries<1>());
  fill_ghosts(f, free_boundaries<1>());
  EXPECT_EQ(before, copy_interior());
}

TEST(FillGhosts, ConstantFieldStaysConstantUnderFree) {
  Field1D<Vec<1>> f(5);
  for (int j = 0; j < 5; ++j) f(j) = {7.0};
  fill_ghosts(f, free_boundaries<1>());
  for (int j = -kGhostWidth; j < 5 + kGhostWidth; ++j) EXPECT_DOUBLE_EQ(f(j)[0], 7.0);
}

TEST(FillGhosts2D, CornersDefinedAfterFill) {
  Field2D<Vec<1>> f(6, 6);
  for (int k = 0; k < 6; ++k)
    for (int j = 0; j < 6; ++j) f(j, k) = {double(10 * j + k)};
  BoundaryCondition2D<1> bc;
  fill_ghosts(f, bc);
  EXPECT_DOUBLE_EQ(f(-2, -3)[0], f(0, 0)[0]);
  EXPECT_DOUBLE_EQ(f(7, 8)[0], f(5, 5)[0]);
  EXPECT_DOUBLE_EQ(f(-1, 3)[0], f(0, 3)[0]);
  EXPECT_DOUBLE_EQ(f(3, -1)[0], f(3, 0)[0]);
}
