#include "gark/stability.hpp"

#include <cmath>
#include <limits>

#include "gark/linalg.hpp"

namespace gark {

namespace {

using C = std::complex<double>;

// z value per global stage index
CVec stage_z(const GlobalTableau& g, const std::vector<C>& z) {
  CVec out(g.b.size());
  for (std::size_t q = 0; q + 1 < g.offsets.size(); ++q)
    for (int i = g.offsets[q]; i < g.offsets[q + 1]; ++i) out[i] = z[q];
  return out;
}

}  // namespace

std::complex<double> stability_value(const PartitionedTableau& t, const std::vector<C>& z) {
  if (static_cast<int>(z.size()) != t.n_partitions)
    throw ShapeError("stability_value: one z per partition required");
  const GlobalTableau g = assemble_global(t);
  const int s = static_cast<int>(g.b.size());
  const CVec zs = stage_z(g, z);

  // form 1: 1 + b^T (I - Z B)^{-1} Z 1
  ComplexMatrix m1(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) m1(i, j) = -zs[i] * g.b_mat(i, j);
    m1(i, i) += 1.0;
  }
  CVec rhs1(s);
  for (int i = 0; i < s; ++i) rhs1[i] = zs[i];
  auto u = lu_factor(m1).solve(rhs1);
  C r1 = 1.0;
  for (int i = 0; i < s; ++i) r1 += g.b[i] * u[i];

  // form 2: 1 + b^T Z (I - B Z)^{-1} 1
  ComplexMatrix m2(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) m2(i, j) = -g.b_mat(i, j) * zs[j];
    m2(i, i) += 1.0;
  }
  CVec rhs2(s, C{1.0, 0.0});
  auto v = lu_factor(m2).solve(rhs2);
  C r2 = 1.0;
  for (int i = 0; i < s; ++i) r2 += g.b[i] * zs[i] * v[i];

  const double scale = std::max(1.0, std::abs(r1));
  if (std::abs(r1 - r2) > 1e-12 * scale)
    throw SingularMatrixError("stability_value: the two algebraic forms disagree (near-resonant z)");
  return r1;
}

std::complex<double> stability_at_stiff_limit(const PartitionedTableau& t, int stiff_partition,
                                              const std::vector<C>& z_other) {
  const int n = t.n_partitions;
  if (stiff_partition < 0 || stiff_partition >= n)
    throw ShapeError("stability_at_stiff_limit: partition index out of range");
  if (static_cast<int>(z_other.size()) != n - 1)
    throw ShapeError("stability_at_stiff_limit: need N-1 pinned values");

  const GlobalTableau g = assemble_global(t);
  std::vector<int> others;
  for (int q = 0; q < n; ++q)
    if (q != stiff_partition) others.push_back(q);

  const int sa = t.stage_counts[stiff_partition];
  int so = 0;
  for (int q : others) so += t.stage_counts[q];

  // gather blocks of B = A + G in (others, stiff) order
  ComplexMatrix Boo(so, so), Boa(so, sa), Bao(sa, so), Baa(sa, sa);
  CVec zo(so);
  Vec bo(so), ba(sa);
  {
    std::vector<int> omap;  // global indices of "other" stages
    for (std::size_t oi = 0; oi < others.size(); ++oi) {
      const int q = others[oi];
      for (int i = g.offsets[q]; i < g.offsets[q + 1]; ++i) {
        zo[omap.size()] = z_other[oi];
        bo[omap.size()] = g.b[i];
        omap.push_back(i);
      }
    }
    const int a0 = g.offsets[stiff_partition];
    for (int i = 0; i < so; ++i)
      for (int j = 0; j < so; ++j) Boo(i, j) = g.b_mat(omap[i], omap[j]);
    for (int i = 0; i < so; ++i)
      for (int j = 0; j < sa; ++j) Boa(i, j) = g.b_mat(omap[i], a0 + j);
    for (int i = 0; i < sa; ++i)
      for (int j = 0; j < so; ++j) Bao(i, j) = g.b_mat(a0 + i, omap[j]);
    for (int i = 0; i < sa; ++i)
      for (int j = 0; j < sa; ++j) Baa(i, j) = g.b_mat(a0 + i, a0 + j);
    for (int i = 0; i < sa; ++i) ba[i] = g.b[a0 + i];
  }

  // z_a -> infinity turns the stiff stage rows into
  //   0 = Bao u_o + Baa u_a + 1, so u_a = -Baa^{-1} (Bao u_o + 1);
  // eliminating u_a gives a Schur-complement system for u_o.
  const ComplexMatrix BaaInv = invert_small(Baa);  // throws Singular
  const CVec onesA(sa, C{1.0, 0.0});
  const CVec BaaInv1 = BaaInv.apply(onesA);

  C r = 1.0;
  CVec ua(sa);
  if (so == 0) {
    for (int i = 0; i < sa; ++i) ua[i] = -BaaInv1[i];
  } else {
    const ComplexMatrix red = BaaInv.matmul(Bao);  // Baa^{-1} Bao
    ComplexMatrix M(so, so);
    const ComplexMatrix BoaRed = Boa.matmul(red);
    for (int i = 0; i < so; ++i) {
      for (int j = 0; j < so; ++j) M(i, j) = -zo[i] * (Boo(i, j) - BoaRed(i, j));
      M(i, i) += 1.0;
    }
    const CVec Boa1 = Boa.apply(BaaInv1);
    CVec rhs(so);
    for (int i = 0; i < so; ++i) rhs[i] = zo[i] * (1.0 - Boa1[i]);
    const CVec uo = lu_factor(M).solve(rhs);
    const CVec BaoUo = Bao.apply(uo);
    CVec w(sa);
    for (int i = 0; i < sa; ++i) w[i] = BaoUo[i] + 1.0;
    ua = BaaInv.apply(w);
    for (int i = 0; i < sa; ++i) ua[i] = -ua[i];
    for (int i = 0; i < so; ++i) r += bo[i] * uo[i];
  }
  for (int i = 0; i < sa; ++i) r += ba[i] * ua[i];
  return r;
}

StabilityGrid scan_region(const PartitionedTableau& t, int sweep_partition,
                          const std::vector<C>& pinned, double re_lo, double re_hi, int n_re,
                          double im_lo, double im_hi, int n_im) {
  const int n = t.n_partitions;
  if (sweep_partition < 0 || sweep_partition >= n)
    throw ShapeError("scan_region: partition index out of range");
  if (static_cast<int>(pinned.size()) != n - 1)
    throw ShapeError("scan_region: need N-1 pinned values");
  if (n_re < 1 || n_im < 1) throw ShapeError("scan_region: resolution must be at least 1");

  StabilityGrid grid;
  grid.nx = n_re;
  grid.ny = n_im;
  grid.re.resize(n_re);
  grid.im.resize(n_im);
  for (int i = 0; i < n_re; ++i)
    grid.re[i] = n_re == 1 ? re_lo : re_lo + (re_hi - re_lo) * i / (n_re - 1);
  for (int j = 0; j < n_im; ++j)
    grid.im[j] = n_im == 1 ? im_lo : im_lo + (im_hi - im_lo) * j / (n_im - 1);
  grid.mag.assign(static_cast<std::size_t>(n_re) * n_im, 0.0);

  std::vector<C> z(n);
  for (int j = 0; j < n_im; ++j) {
    for (int i = 0; i < n_re; ++i) {
      int k = 0;
      for (int q = 0; q < n; ++q)
        z[q] = (q == sweep_partition) ? C{grid.re[i], grid.im[j]} : pinned[k++];
      double v;
      try {
        v = std::abs(stability_value(t, z));
      } catch (const SingularMatrixError&) {
        v = std::numeric_limits<double>::quiet_NaN();
      }
      grid.mag[static_cast<std::size_t>(j) * n_re + i] = v;
    }
  }
  return grid;
}

}  // namespace gark
