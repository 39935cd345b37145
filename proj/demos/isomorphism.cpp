// isomorphism: transporting quiver Hecke generators into the Hecke algebra.
//
// At (e, p) = (3, 3) over F_7 the quiver on the supported residues has
// single arrows, which is exactly where the two corner normalisations
// genuinely differ: both define an isomorphism with the cyclotomic quiver
// Hecke algebra, but only the symmetric one commutes with the shift
// automorphism.  The demo builds both, checks the relations and the
// roundtrip, and then shows the equivariance split.

#include <cstdio>

#include "workbench/fixedpoint.hpp"

using namespace wb;

namespace {

void show(const char* title, const CheckReport& R) {
  std::printf("%s: %s\n", title, R.all() ? "all checks pass" : "FAILURES");
  for (auto& r : R.rows)
    if (!r.ok)
      std::printf("  FAIL %s%s%s\n", r.name.c_str(),
                  r.detail.empty() ? "" : " -- ", r.detail.c_str());
}

}  // namespace

int main() {
  FieldSpec spec;
  spec.kind = "prime";
  spec.modulus = 7;
  spec.q = "2";
  spec.zeta = "2";
  spec.e = 3;
  spec.p = 3;
  Fp k{7};
  auto C = make_context(k, spec);

  Weight L;
  L.dom = WeightDomain::I;
  L.set(0, 0, 1);
  auto H = build_hecke_model(C, L, 2);
  auto wk = collapse_weight(C.par, expand_weight(C.par, L));
  auto klrP = klr_cyclotomic_presentation(C, wk, 2);

  std::printf("H(3,1,2) over F_7: dim %zu, %zu supported residue sequences\n",
              H.dim, H.seqs.size());
  for (auto& s : H.seqs)
    std::printf("  %s  rank %zu\n", detail::seq_label(s).c_str(),
                mat_rank(k, H.Emat(s)));

  bool ok = true;
  for (auto fam : {QFamily::SW, QFamily::BK}) {
    const char* name = fam == QFamily::SW ? "symmetric family" : "one-sided family";
    std::printf("\n-- %s --\n", name);
    auto G = g_images(H, klrP, fam);
    auto rels = verify_g_relations(H, klrP, G);
    show("KLR relations under g", rels);
    auto rt = verify_roundtrip(H, klrP, G);
    show("f o g recovers S, T_a, X_a", rt);
    ok = ok && rels.all() && rt.all();
  }

  // the equivariance split: sigma fixes the symmetric psi, moves the other
  auto SM = build_shift_model(H);
  std::printf("\n-- equivariance under the shift automorphism --\n");
  auto RS = verify_shift_intertwining(H, SM, klrP, g_images(H, klrP, QFamily::SW));
  show("symmetric family", RS);
  auto RB = verify_shift_intertwining(H, SM, klrP, g_images(H, klrP, QFamily::BK));
  std::printf("one-sided family:\n");
  bool split = false;
  for (auto& r : RB.rows) {
    std::printf("  %-4s %s%s%s\n", r.ok ? "ok" : "MOVED", r.name.c_str(),
                r.detail.empty() ? "" : " -- ", r.detail.c_str());
    if (!r.ok && r.name == "sigma_fixes_psi_BK") split = true;
  }
  std::printf("\nthe split is expected here%s\n",
              split ? ": single arrows break one-sided invariance" : " but DID NOT OCCUR");
  return ok && RS.all() && split ? 0 : 1;
}
