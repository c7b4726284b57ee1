#include "thetakit/proofcheck.hpp"

#include "thetakit/errors.hpp"

#include <sstream>

namespace thetakit {

template <class T>
Context<T> make_context(const T& t) {
  auto mp = nome_from_time(t);
  auto nulls = theta_nulls(mp);
  auto ed = half_periods_and_invariants(mp);
  auto dc = derived_constants(ed);
  return Context<T>{std::move(mp), std::move(nulls), std::move(ed), std::move(dc)};
}

template <class T>
T A1(const T& p, const EllipticData<T>& ed) {
  const T& c0 = ed.c0;
  return p * (ed.g2 / 2 - 6 * c0 * c0) + ed.g3 + 2 * c0 * c0 * c0 + ed.g2 * c0 / 2;
}

template <class T>
T A2(const T& p, const EllipticData<T>& ed) {
  const T& c0 = ed.c0;
  const T& g2 = ed.g2;
  const T& g3 = ed.g3;
  return p * p * (g2 - 12 * c0 * c0) + p * (6 * g3 + 4 * g2 * c0) + (6 * g3 * c0 + g2 * c0 * c0 + g2 * g2 / 4);
}

template <class T>
LemmaPair<T> lemma_T(const EllipticData<T>& ed, const ThetaNulls<T>& nulls) {
  const T pi2 = pi_v<T>() * pi_v<T>();
  const T w = pi2 * nulls.th3 * nulls.th3 * nulls.th4 * nulls.th4;
  const T f = -4 * (ed.e1 - ed.e2) * (ed.e1 - ed.e3) * (ed.c0 - ed.e1 - w) * (ed.c0 - ed.e1 + w);
  return {A2(ed.e1, ed), f};
}

template <class T>
LemmaPair<T> lemma_U(const EllipticData<T>& ed) {
  const T a = ed.e1 - ed.e2;
  const T b = ed.e2 - ed.e3;
  const T c = ed.c0 - ed.e2;
  return {A2(ed.e2, ed), 4 * a * b * (c * c + a * b)};
}

namespace {

template <class T>
T five_term(const EdgeSample<T>& s, const T& c0) {
  const auto& j = s.jet;
  const T d = j.p - c0;
  return 8 * s.l1 * d * d / j.p1 - 4 * s.l1 * s.l1 + 8 * d - 4 * s.l1 * j.p2 / j.p1 - j.p3 / j.p1;
}

template <class T>
T five_term_prime(const EdgeSample<T>& s, const EllipticData<T>& ed) {
  const auto& j = s.jet;
  return 4 * (s.l1 * A2(j.p, ed) / (j.p1 * j.p1) + A1(j.p, ed) / j.p1);
}

template <class T>
T g_form(const EdgeSample<T>& s, const DerivedConstants<T>& dc) {
  const auto& j = s.jet;
  return s.l1 + j.p1 * (j.p + dc.r1) / (2 * (j.p * j.p + dc.s1 * j.p + dc.s0));
}

}  // namespace

template <class T>
T F2(const T& x, const Context<T>& ctx, double pole_margin) {
  return five_term(edge_sample(EdgeId::NearHalf, x, ctx.mp, ctx.ed, std::optional<T>{}, pole_margin), ctx.ed.c0);
}

template <class T>
T F2_prime(const T& x, const Context<T>& ctx, double pole_margin) {
  return five_term_prime(edge_sample(EdgeId::NearHalf, x, ctx.mp, ctx.ed, std::optional<T>{}, pole_margin),
                         ctx.ed);
}

template <class T>
T G2(const T& x, const Context<T>& ctx, double pole_margin) {
  return g_form(edge_sample(EdgeId::NearHalf, x, ctx.mp, ctx.ed, std::optional<T>{}, pole_margin), ctx.dc);
}

template <class T>
T nu1_check(const T& x, const Context<T>& ctx, double pole_margin) {
  const auto s = edge_sample(EdgeId::NearHalf, x, ctx.mp, ctx.ed, std::optional<T>{}, pole_margin);
  return 2 * s.l1 + s.jet.p1 / (s.jet.p - ctx.ed.c0);
}

template <class T>
T Qfun(const T& p, const DerivedConstants<T>& dc) {
  const T den = 2 * (p * p + dc.s1 * p + dc.s0);
  if (den == 0) {
    std::ostringstream os;
    os << "p^2 + s1 p + s0 vanishes at p = " << to_double(p);
    throw SingularityError(os.str());
  }
  return (p + dc.r1) * (2 * p + dc.s1) / den;
}

template <class T>
T F3(const T& x, const Context<T>& ctx) {
  return five_term(edge_sample(EdgeId::TopEdge, x, ctx.mp, ctx.ed), ctx.ed.c0);
}

template <class T>
T F3_prime(const T& x, const Context<T>& ctx) {
  return five_term_prime(edge_sample(EdgeId::TopEdge, x, ctx.mp, ctx.ed), ctx.ed);
}

template <class T>
T G3(const T& x, const Context<T>& ctx) {
  return g_form(edge_sample(EdgeId::TopEdge, x, ctx.mp, ctx.ed), ctx.dc);
}

template <class T>
T F3_at_half(const EllipticData<T>& ed) {
  const T d = ed.e3 - ed.c0;
  return 16 * d * d * d / (ed.g2 - 12 * ed.e3 * ed.e3) - 12 * ed.c0;
}

template <class T>
RootData<T> roots_a1_a2(const Context<T>& ctx, const T& tol) {
  RootData<T> r{};
  r.wp_target_a1 = -ctx.dc.r1;
  r.wp_target_a2 = ctx.dc.p2;
  r.a1 = invert_wp(EdgeId::NearHalf, r.wp_target_a1, ctx.mp, ctx.ed, tol);
  r.a2 = invert_wp(EdgeId::NearHalf, r.wp_target_a2, ctx.mp, ctx.ed, tol);
  if (!(r.a1 > 0 && r.a1 < r.a2 && r.a2 < T(0.5))) {
    std::ostringstream os;
    os << "a1 = " << to_double(r.a1) << ", a2 = " << to_double(r.a2) << " at t = " << to_double(ctx.mp.t());
    throw VerificationFailure("0 < a1 < a2 < 1/2", os.str());
  }
  return r;
}

template <class T>
T root_x0(const Context<T>& ctx, const T& tol) {
  const auto& dc = ctx.dc;
  const auto& ed = ctx.ed;
  if (!(dc.mcoef < 0)) {
    std::ostringstream os;
    os << "mcoef = " << to_double(dc.mcoef) << " at t = " << to_double(ctx.mp.t());
    throw VerificationFailure("(g3 + g2 c0 - 4 c0^3) / (g2 - 12 c0^2) < 0", os.str());
  }
  const T target = -dc.cconst / (2 * dc.mcoef);
  if (!(target > ed.e3 && target < ed.e2)) {
    std::ostringstream os;
    os << "-C/(2 mcoef) = " << to_double(target) << " outside (e3, e2) = (" << to_double(ed.e3) << ", "
       << to_double(ed.e2) << ")";
    throw VerificationFailure("G3' has exactly one zero in (0, 1/2)", os.str());
  }
  return invert_wp(EdgeId::TopEdge, target, ctx.mp, ctx.ed, tol);
}

#define THETAKIT_INSTANTIATE(T)                                                     \
  template Context<T> make_context<T>(const T&);                                    \
  template T A1<T>(const T&, const EllipticData<T>&);                               \
  template T A2<T>(const T&, const EllipticData<T>&);                               \
  template LemmaPair<T> lemma_T<T>(const EllipticData<T>&, const ThetaNulls<T>&);   \
  template LemmaPair<T> lemma_U<T>(const EllipticData<T>&);                         \
  template T F2<T>(const T&, const Context<T>&, double);                            \
  template T F2_prime<T>(const T&, const Context<T>&, double);                      \
  template T G2<T>(const T&, const Context<T>&, double);                            \
  template T nu1_check<T>(const T&, const Context<T>&, double);                     \
  template T Qfun<T>(const T&, const DerivedConstants<T>&);                         \
  template T F3<T>(const T&, const Context<T>&);                                    \
  template T F3_prime<T>(const T&, const Context<T>&);                              \
  template T G3<T>(const T&, const Context<T>&);                                    \
  template T F3_at_half<T>(const EllipticData<T>&);                                 \
  template RootData<T> roots_a1_a2<T>(const Context<T>&, const T&);                 \
  template T root_x0<T>(const Context<T>&, const T&);
THETAKIT_FOR_EACH_SCALAR(THETAKIT_INSTANTIATE)
#undef THETAKIT_INSTANTIATE

}  // namespace thetakit
