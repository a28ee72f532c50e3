#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace octo {

template <typename S> using Vec3 = Eigen::Matrix<S, 3, 1>;
template <typename S> using Mat3 = Eigen::Matrix<S, 3, 3>;

inline constexpr int idx(int i, int j, int k) { return i * 9 + j * 3 + k; }

// Ricci alternator on 0-based indices.
inline constexpr int levi_civita(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;
}
inline constexpr int kronecker(int i, int j) { return i == j ? 1 : 0; }

// Raw third-rank tensor, flat storage A(i,j,k) = c[i*9 + j*3 + k].
template <typename S> struct Tensor3 {
  using Storage = Eigen::Matrix<S, 27, 1>;
  Storage c = Storage::Zero();
  std::string frame_label;

  static Tensor3 Zero() { return {}; }

  S& operator()(int i, int j, int k) { return c[idx(i, j, k)]; }
  const S& operator()(int i, int j, int k) const { return c[idx(i, j, k)]; }

  Tensor3& operator+=(const Tensor3& o) { c += o.c; return *this; }
  Tensor3& operator-=(const Tensor3& o) { c -= o.c; return *this; }
  Tensor3& operator*=(S a) { c *= a; return *this; }

  S norm() const { return c.norm(); }
  bool all_finite() const { return c.allFinite(); }
};

template <typename S> Tensor3<S> operator+(Tensor3<S> a, const Tensor3<S>& b) { return a += b; }
template <typename S> Tensor3<S> operator-(Tensor3<S> a, const Tensor3<S>& b) { return a -= b; }
template <typename S> Tensor3<S> operator*(S s, Tensor3<S> a) { return a *= s; }
template <typename S> Tensor3<S> operator*(Tensor3<S> a, S s) { return a *= s; }

using Tensor3d = Tensor3<double>;

template <typename S>
Tensor3<S> outer(const Vec3<S>& a, const Vec3<S>& b, const Vec3<S>& c) {
  Tensor3<S> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) t(i, j, k) = a[i] * b[j] * c[k];
  return t;
}

// B(i,j,k) = A(p[0]-th, p[1]-th, p[2]-th index of (i,j,k)).
template <typename S>
Tensor3<S> permute(const Tensor3<S>& a, const std::array<int, 3>& p) {
  Tensor3<S> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int ijk[3] = {i, j, k};
        t(i, j, k) = a(ijk[p[0]], ijk[p[1]], ijk[p[2]]);
      }
  return t;
}

// Fully symmetric part A_(ijk).
template <typename S> Tensor3<S> symmetrize(const Tensor3<S>& a) {
  Tensor3<S> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        t(i, j, k) = (a(i, j, k) + a(j, k, i) + a(k, i, j) + a(k, j, i) + a(j, i, k) +
                      a(i, k, j)) / S(6);
  return t;
}

// v_i = A_ijj, A_jij, A_jji for slot = 0, 1, 2.
template <typename S> Vec3<S> partial_trace(const Tensor3<S>& a, int slot) {
  Vec3<S> v = Vec3<S>::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (slot == 0) v[i] += a(i, j, j);
      else if (slot == 1) v[i] += a(j, i, j);
      else v[i] += a(j, j, i);
    }
  return v;
}

// A x^2: (A x^2)_i = A_ijk x_j x_k.
template <typename S> Vec3<S> contract2(const Tensor3<S>& a, const Vec3<S>& x) {
  Vec3<S> v = Vec3<S>::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) v[i] += a(i, j, k) * x[j] * x[k];
  return v;
}

// (x . A)_jk = A_ijk x_i.
template <typename S> Mat3<S> contract_first(const Tensor3<S>& a, const Vec3<S>& x) {
  Mat3<S> m = Mat3<S>::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m(j, k) += a(i, j, k) * x[i];
  return m;
}

// A'_ijk = R_ia R_jb R_kc A_abc, so that Phi'(R x) = Phi(x).
template <typename S> Tensor3<S> rotate(const Tensor3<S>& a, const Mat3<S>& r) {
  Tensor3<S> t1, t2, t3;
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        S s(0);
        for (int a0 = 0; a0 < 3; ++a0) s += r(i, a0) * a(a0, b, c);
        t1(i, b, c) = s;
      }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int c = 0; c < 3; ++c) {
        S s(0);
        for (int b = 0; b < 3; ++b) s += r(j, b) * t1(i, b, c);
        t2(i, j, c) = s;
      }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        S s(0);
        for (int c = 0; c < 3; ++c) s += r(k, c) * t2(i, j, c);
        t3(i, j, k) = s;
      }
  t3.frame_label = a.frame_label;
  return t3;
}

template <typename S> bool is_symmetric(const Tensor3<S>& a, S tol) {
  return (a.c - symmetrize(a).c).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// Fully symmetric tensors in the (alpha, beta, gamma) parametrization.

template <typename S> struct SymTensor3 {
  S alpha0{0};
  Vec3<S> alpha = Vec3<S>::Zero();  // A111, A222, A333
  Vec3<S> beta = Vec3<S>::Zero();   // A122, A233, A311
  Vec3<S> gamma = Vec3<S>::Zero();  // A133, A211, A322

  Tensor3<S> to_tensor() const {
    Tensor3<S> t;
    auto set = [&t](int i, int j, int k, S v) {
      t(i, j, k) = v; t(i, k, j) = v; t(j, i, k) = v;
      t(j, k, i) = v; t(k, i, j) = v; t(k, j, i) = v;
    };
    set(0, 1, 2, alpha0);
    for (int i = 0; i < 3; ++i) {
      const int n = (i + 1) % 3, p = (i + 2) % 3;
      set(i, i, i, alpha[i]);
      set(i, n, n, beta[i]);
      set(i, p, p, gamma[i]);
    }
    return t;
  }

  // Trace-type coefficients A_i = 3 (alpha_i + beta_i + gamma_i).
  Vec3<S> trace_coefficients() const { return S(3) * (alpha + beta + gamma); }

  static SymTensor3 from_tensor(const Tensor3<S>& t) {
    const Tensor3<S> s = symmetrize(t);
    SymTensor3 r;
    r.alpha0 = s(0, 1, 2);
    for (int i = 0; i < 3; ++i) {
      const int n = (i + 1) % 3, p = (i + 2) % 3;
      r.alpha[i] = s(i, i, i);
      r.beta[i] = s(i, n, n);
      r.gamma[i] = s(i, p, p);
    }
    return r;
  }
};

// Fully symmetric traceless tensor: gamma_i = -(alpha_i + beta_i).
template <typename S> struct OctupolarTensor {
  S alpha0{0};
  Vec3<S> alpha = Vec3<S>::Zero();
  Vec3<S> beta = Vec3<S>::Zero();

  SymTensor3<S> to_sym() const {
    SymTensor3<S> s;
    s.alpha0 = alpha0;
    s.alpha = alpha;
    s.beta = beta;
    s.gamma = -(alpha + beta);
    return s;
  }
  Tensor3<S> to_tensor() const { return to_sym().to_tensor(); }

  // Reads the traceless symmetric part's coordinates; the input is assumed
  // symmetric and traceless (the trace content is silently dropped).
  static OctupolarTensor from_tensor(const Tensor3<S>& t) {
    const SymTensor3<S> s = SymTensor3<S>::from_tensor(t);
    return {s.alpha0, s.alpha, s.beta};
  }

  S norm() const { return to_tensor().norm(); }
};

using OctupolarTensord = OctupolarTensor<double>;

// ---------------------------------------------------------------------------
// Decompositions.

template <typename S> struct SymmetryDecomposition {
  Tensor3<S> a1, a21, a22, a3;
  Tensor3<S> sum() const { return a1 + a21 + a22 + a3; }
};

template <typename S> SymmetryDecomposition<S> symmetry_decompose(const Tensor3<S>& a) {
  SymmetryDecomposition<S> d;
  d.a1 = symmetrize(a);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        d.a21(i, j, k) = (a(i, j, k) + a(j, i, k) - a(k, j, i) - a(k, i, j)) / S(3);
        d.a22(i, j, k) = (a(i, j, k) - a(j, i, k) + a(k, j, i) - a(j, k, i)) / S(3);
        d.a3(i, j, k) = (a(i, j, k) + a(j, k, i) + a(k, i, j) - a(k, j, i) - a(j, i, k) -
                         a(i, k, j)) / S(6);
      }
  return d;
}

// Detracer on symmetric tensors: A = irr(A) + (1/5)(v_i d_jk + v_j d_ik + v_k d_ij).
template <typename S> Tensor3<S> trace_part(const Vec3<S>& v) {
  Tensor3<S> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        t(i, j, k) = (v[i] * kronecker(j, k) + v[j] * kronecker(i, k) + v[k] * kronecker(i, j)) / S(5);
  return t;
}

template <typename S>
std::pair<OctupolarTensor<S>, Vec3<S>> detrace_symmetric(const SymTensor3<S>& s) {
  const Tensor3<S> a = s.to_tensor();
  const Vec3<S> v = partial_trace(a, 0);
  return {OctupolarTensor<S>::from_tensor(a - trace_part(v)), v};
}

template <typename S> struct HarmonicDecomposition {
  S a_scalar{0};
  Vec3<S> v1, v2, v3, mean_vector;
  Mat3<S> d1, d2;
  OctupolarTensor<S> d3;

  // The seven third-rank pieces, in the order D0, D1_1, D1_2, D1_3, D2_1, D2_2, D3.
  // With P(D) = e_ijl D_lk and Q(D) = D_il e_ljk one has d1(P) = 2D, d2(P) = -D,
  // d1(Q) = -D, d2(Q) = 2D; hence D2_1 = (2P + Q)/3 and D2_2 = (P + 2Q)/3.
  std::array<Tensor3<S>, 7> parts() const {
    std::array<Tensor3<S>, 7> p;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          p[0](i, j, k) = a_scalar * levi_civita(i, j, k) / S(6);
          p[1](i, j, k) = (4 * v1[i] * kronecker(j, k) - kronecker(i, k) * v1[j] -
                           kronecker(i, j) * v1[k]) / S(10);
          p[2](i, j, k) = (-v2[i] * kronecker(j, k) + 4 * kronecker(i, k) * v2[j] -
                           kronecker(i, j) * v2[k]) / S(10);
          p[3](i, j, k) = (-v3[i] * kronecker(j, k) - kronecker(i, k) * v3[j] +
                           4 * kronecker(i, j) * v3[k]) / S(10);
          S s1(0), s2(0);
          for (int l = 0; l < 3; ++l) {
            s1 += 2 * levi_civita(i, j, l) * d1(l, k) + d1(i, l) * levi_civita(l, j, k);
            s2 += levi_civita(i, j, l) * d2(l, k) + 2 * d2(i, l) * levi_civita(l, j, k);
          }
          p[4](i, j, k) = s1 / S(3);
          p[5](i, j, k) = s2 / S(3);
        }
    p[6] = d3.to_tensor();
    return p;
  }

  Tensor3<S> reconstruct() const {
    Tensor3<S> t;
    for (const auto& p : parts()) t += p;
    return t;
  }
};

template <typename S> HarmonicDecomposition<S> harmonic_decompose(const Tensor3<S>& a) {
  HarmonicDecomposition<S> h;
  h.a_scalar = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) h.a_scalar += levi_civita(i, j, k) * a(i, j, k);
  h.v1 = partial_trace(a, 0);
  h.v2 = partial_trace(a, 1);
  h.v3 = partial_trace(a, 2);
  h.mean_vector = (h.v1 + h.v2 + h.v3) / S(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      S s1(0), s2(0);
      for (int m = 0; m < 3; ++m)
        for (int l = 0; l < 3; ++l) {
          s1 += levi_civita(i, m, l) * a(m, l, j) + levi_civita(j, m, l) * a(m, l, i);
          s2 += a(i, m, l) * levi_civita(m, l, j) + a(j, m, l) * levi_civita(m, l, i);
        }
      h.d1(i, j) = s1 / S(2) - h.a_scalar * kronecker(i, j) / S(3);
      h.d2(i, j) = s2 / S(2) - h.a_scalar * kronecker(i, j) / S(3);
    }
  // The symmetric part has trace vector V; its harmonic part is D3.
  h.d3 = OctupolarTensor<S>::from_tensor(symmetrize(a) - trace_part(h.mean_vector));
  return h;
}

// ---------------------------------------------------------------------------
// Young diagrams.

struct YoungDiagram {
  std::vector<int> rows;
};

struct YoungDimensions {
  long long rep_dim;
  long long tensor_dim;
};

YoungDimensions young_dimensions(const YoungDiagram& d, int n);

// ---------------------------------------------------------------------------
// Special constructors.

template <typename S>
OctupolarTensor<S> from_multipoles(const Vec3<S>& a1, const Vec3<S>& a2, const Vec3<S>& a3, S scale) {
  using std::abs;
  for (const auto* a : {&a1, &a2, &a3})
    if (abs(a->norm() - S(1)) > S(1e-10)) throw std::invalid_argument("multipole axis is not a unit vector");
  if (!(scale > S(0))) throw std::invalid_argument("multipole scale must be positive");
  const Tensor3<S> s = symmetrize(outer(a1, a2, a3));
  const Tensor3<S> irr = s - trace_part(partial_trace(s, 0));
  return OctupolarTensor<S>::from_tensor(scale * irr);
}

template <typename S> std::array<Vec3<S>, 4> tetrahedral_vectors() {
  const S r = S(1) / std::sqrt(S(3));
  return {Vec3<S>(-r, -r, -r), Vec3<S>(r, -r, r), Vec3<S>(-r, r, r), Vec3<S>(r, r, -r)};
}

template <typename S> OctupolarTensor<S> tetrahedral_tensor(S scale) {
  Tensor3<S> t;
  for (const auto& n : tetrahedral_vectors<S>()) t += outer(n, n, n);
  return OctupolarTensor<S>::from_tensor(scale * t);
}

}  // namespace octo
