#include "gark/problems.hpp"

#include <cmath>

namespace gark {

OdeProblem brusselator(const BrusselatorConfig& cfg) {
  const int n = cfg.interior_points;
  if (n < 3) throw ShapeError("brusselator: interior_points must be >= 3");
  const double dx = 1.0 / (n + 1);
  const double cdiff = cfg.diffusion / (dx * dx);
  const double A = cfg.a;
  const double B = cfg.b;

  OdeProblem p;
  p.dimension = 2 * n;
  p.partitions = 2;

  p.rhs.push_back([n, A, B](double, const Vec& y) {
    Vec out(2 * n);
    for (int i = 0; i < n; ++i) {
      const double u = y[i];
      const double v = y[n + i];
      out[i] = A + u * u * v - (B + 1.0) * u;
      out[n + i] = B * u - u * u * v;
    }
    return out;
  });
  p.rhs.push_back([n, cdiff](double, const Vec& y) {
    Vec out(2 * n);
    for (int i = 0; i < n; ++i) {
      const double um = i > 0 ? y[i - 1] : 1.0;  // u boundary value
      const double up = i < n - 1 ? y[i + 1] : 1.0;
      out[i] = cdiff * (um - 2.0 * y[i] + up);
      const double vm = i > 0 ? y[n + i - 1] : 3.0;  // v boundary value
      const double vp = i < n - 1 ? y[n + i + 1] : 3.0;
      out[n + i] = cdiff * (vm - 2.0 * y[n + i] + vp);
    }
    return out;
  });

  p.jacobian.push_back(JacobianProvider::analytic_fn([n, B](double, const Vec& y) {
    RealMatrix j(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      const double u = y[i];
      const double v = y[n + i];
      j(i, i) = 2.0 * u * v - (B + 1.0);
      j(i, n + i) = u * u;
      j(n + i, i) = B - 2.0 * u * v;
      j(n + i, n + i) = -u * u;
    }
    return j;
  }));
  p.jacobian.push_back(JacobianProvider::analytic_fn([n, cdiff](double, const Vec&) {
    RealMatrix j(2 * n, 2 * n);
    for (int blk = 0; blk < 2; ++blk) {
      const int o = blk * n;
      for (int i = 0; i < n; ++i) {
        j(o + i, o + i) = -2.0 * cdiff;
        if (i > 0) j(o + i, o + i - 1) = cdiff;
        if (i < n - 1) j(o + i, o + i + 1) = cdiff;
      }
    }
    return j;
  }));
  return p;
}

Vec brusselator_initial_state(const BrusselatorConfig& cfg) {
  const int n = cfg.interior_points;
  const double dx = 1.0 / (n + 1);
  Vec y(2 * n);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 1) * dx;
    y[i] = 1.0 + std::sin(2.0 * M_PI * x);
    y[n + i] = 3.0;
  }
  return y;
}

namespace {

struct ZlaRates {
  double r1, r2, r3, r4, r5, fin;
};

ZlaRates zla_rates(const ZlaConfig& c, const Vec& x, const Vec& z) {
  if (x[1] <= 0.0)
    throw DomainError("zla: y2 <= 0 encountered (square-root kinetics undefined)");
  const double sq2 = std::sqrt(x[1]);
  ZlaRates r;
  const double y1sq = x[0] * x[0];
  r.r1 = c.k1 * y1sq * y1sq * sq2;
  r.r2 = c.k2 * x[2] * x[3];
  r.r3 = (c.k2 / c.big_k) * x[0] * x[4];
  r.r4 = c.k3 * x[0] * x[3] * x[3];
  r.r5 = c.k4 * z[0] * z[0] * sq2;
  r.fin = c.kla * (c.p_co2 / c.henry - x[1]);
  return r;
}

}  // namespace

DaeProblem zla(const ZlaConfig& cfg) {
  DaeProblem p;
  p.dim_x = 5;
  p.dim_z = 1;
  p.f = [cfg](const Vec& x, const Vec& z) {
    const ZlaRates r = zla_rates(cfg, x, z);
    return Vec{-2.0 * r.r1 + r.r2 - r.r3 - r.r4,
               -0.5 * r.r1 - r.r4 - 0.5 * r.r5 + r.fin,
               r.r1 - r.r2 + r.r3,
               -r.r2 + r.r3 - 2.0 * r.r4,
               r.r2 - r.r3 + r.r5};
  };
  p.g = [cfg](const Vec& x, const Vec& z) { return Vec{cfg.ks * x[0] * x[3] - z[0]}; };
  p.fx = [cfg](const Vec& x, const Vec& z) {
    if (x[1] <= 0.0) throw DomainError("zla: y2 <= 0 encountered in Jacobian");
    const double sq2 = std::sqrt(x[1]);
    const double y1 = x[0], y3 = x[2], y4 = x[3], y5 = x[4];
    const double r1_1 = 4.0 * cfg.k1 * y1 * y1 * y1 * sq2;
    const double r1_2 = cfg.k1 * (y1 * y1) * (y1 * y1) / (2.0 * sq2);
    const double r2_3 = cfg.k2 * y4;
    const double r2_4 = cfg.k2 * y3;
    const double r3_1 = (cfg.k2 / cfg.big_k) * y5;
    const double r3_5 = (cfg.k2 / cfg.big_k) * y1;
    const double r4_1 = cfg.k3 * y4 * y4;
    const double r4_4 = 2.0 * cfg.k3 * y1 * y4;
    const double r5_2 = cfg.k4 * z[0] * z[0] / (2.0 * sq2);
    RealMatrix j(5, 5);
    // f1 = -2 r1 + r2 - r3 - r4
    j(0, 0) = -2.0 * r1_1 - r3_1 - r4_1;
    j(0, 1) = -2.0 * r1_2;
    j(0, 2) = r2_3;
    j(0, 3) = r2_4 - r4_4;
    j(0, 4) = -r3_5;
    // f2 = -r1/2 - r4 - r5/2 + Fin
    j(1, 0) = -0.5 * r1_1 - r4_1;
    j(1, 1) = -0.5 * r1_2 - 0.5 * r5_2 - cfg.kla;
    j(1, 3) = -r4_4;
    // f3 = r1 - r2 + r3
    j(2, 0) = r1_1 + r3_1;
    j(2, 1) = r1_2;
    j(2, 2) = -r2_3;
    j(2, 3) = -r2_4;
    j(2, 4) = r3_5;
    // f4 = -r2 + r3 - 2 r4
    j(3, 0) = r3_1 - 2.0 * r4_1;
    j(3, 2) = -r2_3;
    j(3, 3) = -r2_4 - 2.0 * r4_4;
    j(3, 4) = r3_5;
    // f5 = r2 - r3 + r5
    j(4, 0) = -r3_1;
    j(4, 1) = r5_2;
    j(4, 2) = r2_3;
    j(4, 3) = r2_4;
    j(4, 4) = -r3_5;
    return j;
  };
  p.fz = [cfg](const Vec& x, const Vec& z) {
    if (x[1] <= 0.0) throw DomainError("zla: y2 <= 0 encountered in Jacobian");
    const double sq2 = std::sqrt(x[1]);
    const double r5_6 = 2.0 * cfg.k4 * z[0] * sq2;
    RealMatrix j(5, 1);
    j(1, 0) = -0.5 * r5_6;
    j(4, 0) = r5_6;
    return j;
  };
  p.gx = [cfg](const Vec& x, const Vec&) {
    RealMatrix j(1, 5);
    j(0, 0) = cfg.ks * x[3];
    j(0, 3) = cfg.ks * x[0];
    return j;
  };
  p.gz = [](const Vec&, const Vec&) {
    RealMatrix j(1, 1);
    j(0, 0) = -1.0;
    return j;
  };
  return p;
}

DaeState zla_initial_state(const ZlaConfig& cfg) {
  Vec x{0.444, 0.00123, 0.0, 0.007, 0.0};
  Vec z{cfg.ks * x[0] * x[3]};
  return make_dae_state(zla(cfg), std::move(x), std::move(z));
}

OdeProblem dahlquist_split(const std::vector<std::complex<double>>& lambdas) {
  OdeProblem p;
  p.dimension = 2;
  p.partitions = static_cast<int>(lambdas.size());
  for (const auto lam : lambdas) {
    const double a = lam.real();
    const double b = lam.imag();
    p.rhs.push_back([a, b](double, const Vec& y) { return Vec{a * y[0] - b * y[1], b * y[0] + a * y[1]}; });
    RealMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = -b;
    m(1, 0) = b;
    m(1, 1) = a;
    p.jacobian.push_back(JacobianProvider::frozen_matrix(m));
  }
  return p;
}

Vec dahlquist_initial_state() { return Vec{1.0, 0.0}; }

OdeProblem logistic_split() {
  OdeProblem p;
  p.dimension = 1;
  p.partitions = 2;
  p.rhs.push_back([](double, const Vec& y) { return Vec{y[0]}; });
  p.rhs.push_back([](double, const Vec& y) { return Vec{-y[0] * y[0]}; });
  p.jacobian.push_back(JacobianProvider::analytic_fn([](double, const Vec&) {
    RealMatrix m(1, 1);
    m(0, 0) = 1.0;
    return m;
  }));
  p.jacobian.push_back(JacobianProvider::analytic_fn([](double, const Vec& y) {
    RealMatrix m(1, 1);
    m(0, 0) = -2.0 * y[0];
    return m;
  }));
  return p;
}

OdeProblem logistic_unpartitioned() {
  OdeProblem p;
  p.dimension = 1;
  p.partitions = 1;
  p.rhs.push_back([](double, const Vec& y) { return Vec{y[0] - y[0] * y[0]}; });
  p.jacobian.push_back(JacobianProvider::analytic_fn([](double, const Vec& y) {
    RealMatrix m(1, 1);
    m(0, 0) = 1.0 - 2.0 * y[0];
    return m;
  }));
  return p;
}

double logistic_exact(double y0, double t) {
  const double et = std::exp(t);
  return y0 * et / (1.0 - y0 + y0 * et);
}

}  // namespace gark
