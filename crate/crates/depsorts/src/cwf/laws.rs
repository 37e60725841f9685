//! Executable law suites. The generic checkers take explicit instances and
//! work in any [`Cwf`]; the `finset_*` drivers feed them every instance of
//! bounded size in [`FinSetCwf`].

use std::collections::BTreeMap;
use std::fmt::Debug;

use super::finset::{all_families, all_functions, all_sections, objects_up_to, FinMor, FinSet, FinSetCwf, FinTm, FinTy};
use super::{Cwf, FiberMismatch};

/// Outcome of checking one law on many instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Accumulates reports keyed by law name.
#[derive(Clone, Debug, Default)]
pub struct LawSuite {
    reports: BTreeMap<String, LawReport>,
}

impl LawSuite {
    pub fn new() -> LawSuite {
        LawSuite::default()
    }

    pub fn record(&mut self, law: &str, ok: bool, detail: impl FnOnce() -> String) {
        let report = self.reports.entry(law.to_string()).or_insert_with(|| LawReport {
            law: law.to_string(),
            checks: 0,
            failures: 0,
            first_failure: None,
        });
        report.checks += 1;
        if !ok {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some(detail());
            }
        }
    }

    /// Records `lhs = rhs`, counting an operation failure on either side as
    /// a violation.
    pub fn equal<T: PartialEq + Debug>(&mut self, law: &str, lhs: Result<T, FiberMismatch>, rhs: Result<T, FiberMismatch>) {
        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
        self.record(law, ok, || format!("{lhs:?} ≠ {rhs:?}"));
    }

    pub fn reports(&self) -> Vec<LawReport> {
        self.reports.values().cloned().collect()
    }

    pub fn merge(&mut self, other: LawSuite) {
        for (law, r) in other.reports {
            let mine = self.reports.entry(law).or_insert_with(|| LawReport { checks: 0, failures: 0, ..r.clone() });
            mine.checks += r.checks;
            mine.failures += r.failures;
            if mine.first_failure.is_none() {
                mine.first_failure = r.first_failure;
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.reports.values().all(LawReport::passed)
    }
}

/// (a): identities, associativity for `h ∘ g ∘ f`, and uniqueness of the
/// map into the terminal object.
pub fn category_laws<C: Cwf>(c: &C, suite: &mut LawSuite, f: &C::Mor, g: &C::Mor, h: &C::Mor) {
    suite.equal("(a) left identity", c.compose(&c.id(&c.cod(f)), f), Ok(f.clone()));
    suite.equal("(a) right identity", c.compose(f, &c.id(&c.dom(f))), Ok(f.clone()));
    let lhs = c.compose(h, g).and_then(|hg| c.compose(&hg, f));
    let rhs = c.compose(g, f).and_then(|gf| c.compose(h, &gf));
    suite.equal("(a) associativity", lhs, rhs);
    suite.equal("(a) terminal", Ok(c.cod(&c.bang(&c.dom(f)))), Ok(c.terminal()));
}

/// (b): `A{1} = A` and `A{f ∘ g} = A{f}{g}`.
pub fn type_laws<C: Cwf>(c: &C, suite: &mut LawSuite, ty: &C::Ty, f: &C::Mor, g: &C::Mor) {
    suite.equal("(b)(i) A{1} = A", c.ty_subst(ty, &c.id(&c.ty_ctx(ty))), Ok(ty.clone()));
    let lhs = c.compose(f, g).and_then(|fg| c.ty_subst(ty, &fg));
    let rhs = c.ty_subst(ty, f).and_then(|af| c.ty_subst(&af, g));
    suite.equal("(b)(ii) A{fg} = A{f}{g}", lhs, rhs);
}

/// (c) and (e): `p(A) : Γ.A → Γ` and `v_A ∈ Tm(Γ.A, A{p(A)})`.
pub fn comprehension_shape<C: Cwf>(c: &C, suite: &mut LawSuite, ty: &C::Ty) {
    let p = c.p(ty);
    suite.equal("(c) p(A) : Γ.A → Γ", Ok((c.dom(&p), c.cod(&p))), Ok((c.ext(ty), c.ty_ctx(ty))));
    suite.equal("(e) v_A : A{p(A)}", Ok(c.tm_ty(&c.v(ty))), c.ty_subst(ty, &p));
}

/// (d): `a{1} = a` and `a{f ∘ g} = a{f}{g}`.
pub fn term_laws<C: Cwf>(c: &C, suite: &mut LawSuite, tm: &C::Tm, f: &C::Mor, g: &C::Mor) {
    let ctx = c.ty_ctx(&c.tm_ty(tm));
    suite.equal("(d)(i) a{1} = a", c.tm_subst(tm, &c.id(&ctx)), Ok(tm.clone()));
    let lhs = c.compose(f, g).and_then(|fg| c.tm_subst(tm, &fg));
    let rhs = c.tm_subst(tm, f).and_then(|af| c.tm_subst(&af, g));
    suite.equal("(d)(ii) a{fg} = a{f}{g}", lhs, rhs);
}

/// (f)(i), (ii) and (iv) for `f : Γ → Δ`, `a ∈ Tm(Γ, A{f})` and `g : Θ → Γ`.
pub fn pairing_laws<C: Cwf>(c: &C, suite: &mut LawSuite, ty: &C::Ty, f: &C::Mor, a: &C::Tm, g: &C::Mor) {
    let fa = match c.pair(f, a, ty) {
        Ok(fa) => fa,
        Err(e) => {
            suite.record("(f) pairing defined", false, || e.to_string());
            return;
        }
    };
    suite.equal("(f)(i) p∘⟨f,a⟩ = f", c.compose(&c.p(ty), &fa), Ok(f.clone()));
    suite.equal("(f)(ii) v{⟨f,a⟩} = a", c.tm_subst(&c.v(ty), &fa), Ok(a.clone()));
    let lhs = c.compose(&fa, g);
    let rhs = c.compose(f, g).and_then(|fg| c.tm_subst(a, g).and_then(|ag| c.pair(&fg, &ag, ty)));
    suite.equal("(f)(iv) ⟨f,a⟩∘g = ⟨fg,a{g}⟩", lhs, rhs);
}

/// (f)(iii): `⟨p(A) ∘ h, v_A{h}⟩ = h` for `h : Γ → Δ.A`.
pub fn eta_law<C: Cwf>(c: &C, suite: &mut LawSuite, ty: &C::Ty, h: &C::Mor) {
    let rhs = c.compose(&c.p(ty), h).and_then(|ph| c.tm_subst(&c.v(ty), h).and_then(|vh| c.pair(&ph, &vh, ty)));
    suite.equal("(f)(iii) ⟨p∘h, v{h}⟩ = h", rhs, Ok(h.clone()));
}

/// Every cwf law on every instance built from sets of size at most `n`
/// and families with fibers of size at most `n`.
pub fn finset_cwf_laws(n: u32) -> LawSuite {
    let c = FinSetCwf;
    let mut suite = LawSuite::new();
    let objs = objects_up_to(n);
    let maps = |d: &FinSet, g: &FinSet| all_functions(d, g);
    for a in &objs {
        for b in &objs {
            for f in maps(a, b) {
                for cc in &objs {
                    for g in maps(b, cc) {
                        for d in &objs {
                            for h in maps(cc, d) {
                                category_laws(&c, &mut suite, &f, &g, &h);
                            }
                        }
                    }
                }
            }
        }
        let into_terminal = all_functions(a, &c.terminal());
        suite.record("(a) terminal", into_terminal == vec![c.bang(a)], || format!("maps {a} → ⊤"));
    }
    for gamma in &objs {
        for ty in all_families(gamma, n) {
            comprehension_shape(&c, &mut suite, &ty);
            let sections = all_sections(&ty);
            for delta in &objs {
                for f in maps(delta, gamma) {
                    let pulled = c.ty_subst(&ty, &f).expect("f lands in Γ");
                    let pulled_sections = all_sections(&pulled);
                    for theta in &objs {
                        for g in maps(theta, delta) {
                            type_laws(&c, &mut suite, &ty, &f, &g);
                            for tm in &sections {
                                term_laws(&c, &mut suite, tm, &f, &g);
                            }
                            for a in &pulled_sections {
                                pairing_laws(&c, &mut suite, &ty, &f, a, &g);
                            }
                        }
                    }
                }
                for h in maps(delta, &c.ext(&ty)) {
                    eta_law(&c, &mut suite, &ty, &h);
                }
            }
        }
    }
    suite
}

/// Checks that every square
///
/// ```text
///   Δ.S{f} ──q(f,S)──▶ Γ.S
///     │p                 │p
///     ▼                  ▼
///     Δ ───────f───────▶ Γ
/// ```
///
/// is a pullback: every cone from a set of size at most `cone_size` factors
/// through the corner by exactly one map.
pub fn finset_pullbacks(n: u32, cone_size: u32) -> LawSuite {
    let c = FinSetCwf;
    let mut suite = LawSuite::new();
    let objs = objects_up_to(n);
    for gamma in &objs {
        for ty in all_families(gamma, n) {
            let top = c.ext(&ty);
            let p = c.p(&ty);
            for delta in &objs {
                for f in all_functions(delta, gamma) {
                    let q = c.q(&f, &ty).expect("q is defined");
                    let pulled = c.ty_subst(&ty, &f).expect("f lands in Γ");
                    let corner = c.ext(&pulled);
                    let pp = c.p(&pulled);
                    let commutes = c.compose(&p, &q) == c.compose(&f, &pp);
                    suite.record("q-square commutes", commutes, || format!("{f:?} {ty:?}"));
                    for x in objects_up_to(cone_size) {
                        for g in all_functions(&x, delta) {
                            for h in all_functions(&x, &top) {
                                if c.compose(&f, &g) != c.compose(&p, &h) {
                                    continue;
                                }
                                let count = mediating_count(&x, &corner, &pp, &q, &g, &h);
                                suite.record("q-square is a pullback", count == 1, || {
                                    format!("{count} mediating maps for cone {g:?}, {h:?}")
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    suite
}

/// The number of `u : X → corner` with `p ∘ u = g` and `q ∘ u = h`. Maps
/// between sets are determined pointwise, so the count is the product of
/// the pointwise candidate counts.
fn mediating_count(x: &FinSet, corner: &FinSet, pp: &FinMor, q: &FinMor, g: &FinMor, h: &FinMor) -> usize {
    x.elems()
        .iter()
        .map(|pt| corner.elems().iter().filter(|u| pp.apply(u) == g.apply(pt) && q.apply(u) == h.apply(pt)).count())
        .product()
}

/// Instances for the type-former laws: a context, a family over it and the
/// maps into the context.
struct Base {
    gamma: FinSet,
    a: FinTy,
    maps_in: Vec<FinMor>,
}

fn bases(n: u32) -> Vec<Base> {
    let objs = objects_up_to(n);
    let mut out = Vec::new();
    for gamma in &objs {
        let maps_in: Vec<FinMor> = objs.iter().flat_map(|d| all_functions(d, gamma)).collect();
        for a in all_families(gamma, n) {
            out.push(Base { gamma: gamma.clone(), a, maps_in: maps_in.clone() });
        }
    }
    out
}

/// Families over `ctx`, or none when `ctx` exceeds the size bound.
fn families_within(ctx: &FinSet, n: u32) -> Vec<FinTy> {
    if ctx.len() > n as usize {
        Vec::new()
    } else {
        all_families(ctx, n)
    }
}

/// The substitution and conversion equations of `N_k` (`k ≤ 2`), `Σ`, `Π`
/// and `+`, exhaustively over contexts of size at most `n`, families with
/// fibers of size at most `n`, and dependent families over comprehensions
/// of size at most `n`.
pub fn finset_type_former_laws(n: u32) -> LawSuite {
    let mut suite = LawSuite::new();
    nat_laws(n, &mut suite);
    for base in bases(n) {
        sigma_laws(n, &base, &mut suite);
        pi_laws(n, &base, &mut suite);
        sum_laws(n, &base, &mut suite);
    }
    suite
}

fn nat_laws(n: u32, suite: &mut LawSuite) {
    let c = FinSetCwf;
    for gamma in objects_up_to(n) {
        let maps_in: Vec<FinMor> = objects_up_to(n).iter().flat_map(|d| all_functions(d, &gamma)).collect();
        for k in 0..=2u32 {
            let nk = c.nat_ty(&gamma, k);
            for f in &maps_in {
                suite.equal("N_k-subst", c.ty_subst(&nk, f), Ok(c.nat_ty(&f.dom, k)));
                for i in 0..k {
                    suite.equal("i_k-subst", c.tm_subst(&c.nat_elem(&gamma, k, i).unwrap(), f), c.nat_elem(&f.dom, k, i));
                }
            }
            for motive in families_within(&c.ext(&nk), n) {
                let branch_tys: Vec<FinTy> = (0..k)
                    .map(|i| c.ty_subst(&motive, &c.section(&c.nat_elem(&gamma, k, i).unwrap(), &nk).unwrap()).unwrap())
                    .collect();
                let branch_sets: Vec<Vec<FinTm>> = branch_tys.iter().map(all_sections).collect();
                for branches in cartesian(&branch_sets) {
                    for i in 0..k {
                        let r = c.nat_rec(&motive, &c.nat_elem(&gamma, k, i).unwrap(), &branches);
                        suite.equal("N_k-conv", r, Ok(branches[i as usize].clone()));
                    }
                    for p in all_sections(&nk) {
                        let r = c.nat_rec(&motive, &p, &branches).unwrap();
                        for f in &maps_in {
                            let lhs = c.tm_subst(&r, f);
                            let rhs = (|| {
                                let moved: Vec<FinTm> = branches.iter().map(|m| c.tm_subst(m, f)).collect::<Result<_, _>>()?;
                                c.nat_rec(&c.ty_subst(&motive, &c.q(f, &nk)?)?, &c.tm_subst(&p, f)?, &moved)
                            })();
                            suite.equal("R_k-subst", lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}

fn sigma_laws(n: u32, base: &Base, suite: &mut LawSuite) {
    let c = FinSetCwf;
    let a = &base.a;
    for b in families_within(&c.ext(a), n) {
        let s = c.sigma(a, &b).unwrap();
        for f in &base.maps_in {
            let qa = c.q(f, a).unwrap();
            let rhs = c.ty_subst(a, f).and_then(|af| c.ty_subst(&b, &qa).and_then(|bq| c.sigma(&af, &bq)));
            suite.equal("Σ-subst", c.ty_subst(&s, f), rhs);
        }
        for m in all_sections(a) {
            let bm = c.ty_subst(&b, &c.section(&m, a).unwrap()).unwrap();
            for nn in all_sections(&bm) {
                let pair = c.sigma_pair(a, &b, &m, &nn).unwrap();
                for f in &base.maps_in {
                    let rhs = (|| {
                        let (af, bq) = (c.ty_subst(a, f)?, c.ty_subst(&b, &c.q(f, a)?)?);
                        c.sigma_pair(&af, &bq, &c.tm_subst(&m, f)?, &c.tm_subst(&nn, f)?)
                    })();
                    suite.equal("Pair-subst", c.tm_subst(&pair, f), rhs);
                }
            }
        }
        let pair_mor = c.sigma_pair_mor(a, &b).unwrap();
        let pab = c.compose(&c.p(a), &c.p(&b)).unwrap();
        let formula = (|| {
            let a1 = c.ty_subst(a, &pab)?;
            let b1 = c.ty_subst(&b, &c.q(&pab, a)?)?;
            let vab = c.tm_subst(&c.v(a), &c.p(&b))?;
            c.pair(&pab, &c.sigma_pair(&a1, &b1, &vab, &c.v(&b))?, &s)
        })();
        suite.equal("pair = ⟨p(A.B), Pair(v, v)⟩", Ok(pair_mor.clone()), formula);
        for motive in families_within(&c.ext(&s), n) {
            let k_ty = c.ty_subst(&motive, &pair_mor).unwrap();
            for k in all_sections(&k_ty) {
                for m in all_sections(a) {
                    let ma = c.section(&m, a).unwrap();
                    let bm = c.ty_subst(&b, &ma).unwrap();
                    for nn in all_sections(&bm) {
                        let lhs = c.sigma_elim(a, &b, &motive, &c.sigma_pair(a, &b, &m, &nn).unwrap(), &k);
                        let rhs = c.pair(&ma, &nn, &b).and_then(|mn| c.tm_subst(&k, &mn));
                        suite.equal("Σ-conv", lhs, rhs);
                    }
                }
                for p in all_sections(&s) {
                    let e = c.sigma_elim(a, &b, &motive, &p, &k).unwrap();
                    for f in &base.maps_in {
                        let rhs = (|| {
                            let qa = c.q(f, a)?;
                            let bq = c.ty_subst(&b, &qa)?;
                            let qab = c.q(&qa, &b)?;
                            let cq = c.ty_subst(&motive, &c.q(f, &s)?)?;
                            c.sigma_elim(&c.ty_subst(a, f)?, &bq, &cq, &c.tm_subst(&p, f)?, &c.tm_subst(&k, &qab)?)
                        })();
                        suite.equal("E-subst", c.tm_subst(&e, f), rhs);
                    }
                }
            }
        }
    }
}

fn pi_laws(n: u32, base: &Base, suite: &mut LawSuite) {
    let c = FinSetCwf;
    let a = &base.a;
    for b in families_within(&c.ext(a), n) {
        let pi = c.pi(a, &b).unwrap();
        for f in &base.maps_in {
            let qa = c.q(f, a).unwrap();
            let rhs = c.ty_subst(a, f).and_then(|af| c.ty_subst(&b, &qa).and_then(|bq| c.pi(&af, &bq)));
            suite.equal("Π-subst", c.ty_subst(&pi, f), rhs);
        }
        for body in all_sections(&b) {
            let lam = c.lambda(a, &body).unwrap();
            for nn in all_sections(a) {
                let lhs = c.app(a, &b, &lam, &nn);
                let rhs = c.section(&nn, a).and_then(|s| c.tm_subst(&body, &s));
                suite.equal("β-conv", lhs, rhs);
            }
            for f in &base.maps_in {
                let rhs = (|| c.lambda(&c.ty_subst(a, f)?, &c.tm_subst(&body, &c.q(f, a)?)?))();
                suite.equal("λ-subst", c.tm_subst(&lam, f), rhs);
            }
        }
        for m in all_sections(&pi) {
            for nn in all_sections(a) {
                let app = c.app(a, &b, &m, &nn).unwrap();
                for f in &base.maps_in {
                    let rhs = (|| {
                        let bq = c.ty_subst(&b, &c.q(f, a)?)?;
                        c.app(&c.ty_subst(a, f)?, &bq, &c.tm_subst(&m, f)?, &c.tm_subst(&nn, f)?)
                    })();
                    suite.equal("App-subst", c.tm_subst(&app, f), rhs);
                }
            }
        }
    }
}

fn sum_laws(n: u32, base: &Base, suite: &mut LawSuite) {
    let c = FinSetCwf;
    let a = &base.a;
    for b in all_families(&base.gamma, n) {
        let sum = c.sum(a, &b).unwrap();
        for f in &base.maps_in {
            let rhs = (|| c.sum(&c.ty_subst(a, f)?, &c.ty_subst(&b, f)?))();
            suite.equal("+-subst", c.ty_subst(&sum, f), rhs);
        }
        let lefts = all_sections(a);
        let rights = all_sections(&b);
        for f in &base.maps_in {
            let (af, bf) = (c.ty_subst(a, f).unwrap(), c.ty_subst(&b, f).unwrap());
            for m in &lefts {
                let rhs = (|| c.inl(&af, &bf, &c.tm_subst(m, f)?))();
                suite.equal("inl-subst", c.tm_subst(&c.inl(a, &b, m).unwrap(), f), rhs);
            }
            for nn in &rights {
                let rhs = (|| c.inr(&af, &bf, &c.tm_subst(nn, f)?))();
                suite.equal("inr-subst", c.tm_subst(&c.inr(a, &b, nn).unwrap(), f), rhs);
            }
        }
        for motive in families_within(&c.ext(&sum), n) {
            let pa = c.p(a);
            let pb = c.p(&b);
            let k1_ty = (|| {
                let inj = c.inl(&c.ty_subst(a, &pa)?, &c.ty_subst(&b, &pa)?, &c.v(a))?;
                c.ty_subst(&motive, &c.pair(&pa, &inj, &sum)?)
            })()
            .unwrap();
            let k2_ty = (|| {
                let inj = c.inr(&c.ty_subst(a, &pb)?, &c.ty_subst(&b, &pb)?, &c.v(&b))?;
                c.ty_subst(&motive, &c.pair(&pb, &inj, &sum)?)
            })()
            .unwrap();
            for k1 in all_sections(&k1_ty) {
                for k2 in all_sections(&k2_ty) {
                    for m in &lefts {
                        let lhs = c.sum_elim(a, &b, &motive, &c.inl(a, &b, m).unwrap(), &k1, &k2);
                        let rhs = c.section(m, a).and_then(|s| c.tm_subst(&k1, &s));
                        suite.equal("+-conv1", lhs, rhs);
                    }
                    for nn in &rights {
                        let lhs = c.sum_elim(a, &b, &motive, &c.inr(a, &b, nn).unwrap(), &k1, &k2);
                        let rhs = c.section(nn, &b).and_then(|s| c.tm_subst(&k2, &s));
                        suite.equal("+-conv2", lhs, rhs);
                    }
                    for p in all_sections(&sum) {
                        let d = c.sum_elim(a, &b, &motive, &p, &k1, &k2).unwrap();
                        for f in &base.maps_in {
                            let rhs = (|| {
                                c.sum_elim(
                                    &c.ty_subst(a, f)?,
                                    &c.ty_subst(&b, f)?,
                                    &c.ty_subst(&motive, &c.q(f, &sum)?)?,
                                    &c.tm_subst(&p, f)?,
                                    &c.tm_subst(&k1, &c.q(f, a)?)?,
                                    &c.tm_subst(&k2, &c.q(f, &b)?)?,
                                )
                            })();
                            suite.equal("D-subst", c.tm_subst(&d, f), rhs);
                        }
                    }
                }
            }
        }
    }
}

fn cartesian(sets: &[Vec<FinTm>]) -> Vec<Vec<FinTm>> {
    use itertools::Itertools;
    if sets.is_empty() {
        return vec![Vec::new()];
    }
    sets.iter().cloned().multi_cartesian_product().collect()
}
