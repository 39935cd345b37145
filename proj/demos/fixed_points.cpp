// fixed_points: the shift automorphism and the subalgebra it cuts out.
//
// Over F_3 with (e, p) = (2, 2) the algebra H(2, 1, 2) is 8-dimensional and
// sigma acts diagonally on the normal basis.  The demo prints that diagonal,
// splits the algebra into eigensectors, embeds G(2, 2, 2) via phi, and
// finishes with the bracket identity that rewrites the extra relation of the
// p = 3 presentation.

#include <cstdio>
#include <string>

#include "workbench/fixedpoint.hpp"

using namespace wb;

namespace {

Weight level_one() {
  Weight w;
  w.dom = WeightDomain::I;
  w.set(0, 0, 1);
  return w;
}

HeckeModel<Fp> build(unsigned long mod, const char* q, const char* zeta,
                     unsigned long e, unsigned long p) {
  FieldSpec s;
  s.kind = "prime";
  s.modulus = mod;
  s.q = q;
  s.zeta = zeta;
  s.e = e;
  s.p = p;
  Fp k{mod};
  return build_hecke_model(make_context(k, s), level_one(), 2);
}

}  // namespace

int main() {
  auto H = build(3, "2", "2", 2, 2);
  const auto& k = H.field();
  auto SM = build_shift_model(H);

  std::printf("sigma on the normal basis of H(2,1,2): diag(");
  for (std::size_t i = 0; i < H.dim; ++i)
    std::printf("%s%s", i ? ", " : "", k.str(SM.D.at(i, i)).c_str());
  std::printf(")\n");

  std::printf("eigensectors:");
  for (unsigned long m = 0; m < SM.p; ++m)
    std::printf(" rank(mu_%lu) = %zu", m,
                mat_rank(k, sector_projector(H, SM, m)));
  std::printf("   (averaging projector mu has rank %zu)\n", SM.fixed_rank);

  auto PM = build_phi_model(H);
  std::printf("\nphi sends s -> S^p, t_1' -> S^-1 T_1 S, t_a -> T_a;"
              " image dimension %zu\n", PM.subalg_dim);
  auto R = verify_phi(H, SM, PM,
                      grpn_presentation(H.C, level_one(), 2, GrpnVariant::BMR));
  for (auto& r : R.rows)
    std::printf("  %-4s %s\n", r.ok ? "ok" : "FAIL", r.name.c_str());

  auto G = graded_compare(H.C, collapse_weight(H.C.par,
                                               expand_weight(H.C.par, level_one())),
                          2, H.dim);
  std::printf("\ngraded dimensions: full %s, fixed %s\n",
              G.full.str().c_str(), G.fixed.str().c_str());

  // the bracket identity at p = 3, where each bracket has one factor
  auto H3 = build(7, "2", "2", 3, 3);
  auto A2 = appendix_a2(H3);
  std::printf("\nbracket identity in H(3,1,2), p = 3:\n");
  for (auto& r : A2.rows)
    std::printf("  %-4s %s\n", r.ok ? "ok" : "FAIL", r.name.c_str());

  return R.all() && G.rows.all() && A2.all() ? 0 : 1;
}
