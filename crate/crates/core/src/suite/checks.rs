//! The identity registry.

use serde_json::{json, Value};

use super::{at_sample, expect, expect_mat_eq, Failure, Identity, Kind, Outcome, RunMode, SuiteConfig};
use crate::clifford::{
    dictionary_element, hyperbolic_embed, lift_hyperbolic_to_spin, phi_embed, spin_act, spin_certify,
    translation_matrix, CliffordElem, SpinElem,
};
use crate::matrix::{FormClass, RingMat};
use crate::orbits::{
    alt4_to_unit_vector, factorization_check, power_row_section, random_elementary_witness, stabilizer_block,
    verify_congruence_witness, CongruenceMap, Decomposition, ElementaryWitness, EpinFactor, Flavor,
};
use crate::ring::{dot, rational, sample_quadric_point, RationalSampler, RingCtx, RingElem};
use crate::suslin::{
    degree_class_holds, e_inverse, e_matrix, j_matrix, psi, psi_degree_map, q_form, sigma, standard_involution,
    suslin_alpha, suslin_alpha_bar, DegreeClass, StructConsts, UnitVector,
};

const Q: RingCtx = RingCtx::Rational;

fn any(_: usize) -> bool {
    true
}

fn at_least_2(n: usize) -> bool {
    n >= 2
}

pub static REGISTRY: [Identity; 23] = [
    Identity {
        name: "det",
        statement: "det alpha_n(a,b) = (sum a_i b_i)^(2^(n-2))",
        kind: Kind::Ring(|t| t.det),
        applies: at_least_2,
        run: check_det,
    },
    Identity {
        name: "product",
        statement: "alpha_n alpha_bar_n = alpha_bar_n alpha_n = (sum a_i b_i) I",
        kind: Kind::Ring(|t| t.product),
        applies: any,
        run: check_product,
    },
    Identity {
        name: "transpose-duality",
        statement: "alpha_bar_n(a,b) = alpha_n(b,a)^t",
        kind: Kind::Ring(|t| t.product),
        applies: any,
        run: check_transpose,
    },
    Identity {
        name: "j-laws",
        statement: "J_n J_n^t = J_n^t J_n = I, J_n^-1 = (-1)^(n(n-1)/2) J_n",
        kind: Kind::Exact,
        applies: any,
        run: check_j_laws,
    },
    Identity {
        name: "e-invertible",
        statement: "E_n E_n^-1 = E_n^-1 E_n = I",
        kind: Kind::Exact,
        applies: any,
        run: check_e_invertible,
    },
    Identity {
        name: "e-form",
        statement: "E_n^t J_n^t E_n = sigma (n = 0 mod 4), -psi (n = 2 mod 4)",
        kind: Kind::Exact,
        applies: |n| n % 2 == 0,
        run: check_e_form,
    },
    Identity {
        name: "psi-class",
        statement: "Psi_n(v,w) is orthogonal/symmetric/symplectic/alternating for n = 0/1/2/3 mod 4",
        kind: Kind::Ring(|t| t.class),
        applies: at_least_2,
        run: check_psi_class,
    },
    Identity {
        name: "psi-det-one",
        statement: "det Psi_n(v,w) = 1 for n = 1 mod 4",
        kind: Kind::Ring(|t| t.det),
        applies: |n| n % 4 == 1 && n >= 5,
        run: check_psi_det,
    },
    Identity {
        name: "pfaffian-one",
        statement: "Pf Psi_n(v,w) = 1 for n = 3 mod 4",
        kind: Kind::Ring(|t| t.pfaffian),
        applies: |n| n % 4 == 3,
        run: check_pfaffian,
    },
    Identity {
        name: "psi-unit-value",
        statement: "Psi_n(e_n,e_n) = sigma (n = 1 mod 4), psi (n = 3 mod 4)",
        kind: Kind::Exact,
        applies: |n| n % 2 == 1 && n >= 3,
        run: check_psi_unit,
    },
    Identity {
        name: "clifford-relation",
        statement: "phi(v)^2 = q(v) I",
        kind: Kind::Ring(|t| t.clifford),
        applies: any,
        run: check_clifford,
    },
    Identity {
        name: "involution-anti",
        statement: "(MN)* = N* M*, (M*)* = M",
        kind: Kind::Ring(|t| t.clifford),
        applies: any,
        run: check_involution_anti,
    },
    Identity {
        name: "involution-v",
        statement: "phi(v)* = -phi(v)",
        kind: Kind::Ring(|t| t.clifford),
        applies: any,
        run: check_involution_v,
    },
    Identity {
        name: "spin-homomorphism",
        statement: "pi(lift s) = H(s), pi(g1 g2) = pi(g1) pi(g2)",
        kind: Kind::Randomized { needs_lift: true },
        applies: at_least_2,
        run: check_spin_hom,
    },
    Identity {
        name: "spin6-dictionary",
        statement: "diag(h, (h*)^-1) is in Spin_6 iff det h = 1",
        kind: Kind::Randomized { needs_lift: false },
        applies: |n| n == 3,
        run: check_dictionary,
    },
    Identity {
        name: "spin-act",
        statement: "g . (v,w) is a unit vector equal to pi(g)(v,w)",
        kind: Kind::Randomized { needs_lift: true },
        applies: at_least_2,
        run: check_spin_act,
    },
    Identity {
        name: "translation-law",
        statement: "Psi_n(g.(v,w)) = g' Psi_n(v,w) g'^t, g' = E^t h E^-t",
        kind: Kind::Ring(|t| t.clifford),
        applies: |n| n == 3,
        run: check_translation,
    },
    Identity {
        name: "hyperbolic-so",
        statement: "H(s) = diag(s, s^-t) preserves G' and has det 1",
        kind: Kind::Ring(|t| t.det),
        applies: at_least_2,
        run: check_hyperbolic,
    },
    Identity {
        name: "even-embedding",
        statement: "E_n^-1 phi_i E_n is sigma-orthogonal for g = diag(phi_1, phi_2) in Spin",
        kind: Kind::Randomized { needs_lift: true },
        applies: |n| n % 4 == 0,
        run: check_even_embedding,
    },
    Identity {
        name: "power-row-section",
        statement: "(x1^m, x2..xn) . (y1^m, y_i sum_k C(m,k)(x1y1)^k s^(m-k-1)) = 1, m = 1..12",
        kind: Kind::SymbolicOnly(|t| t.class),
        applies: at_least_2,
        run: check_power_rows,
    },
    Identity {
        name: "alt4-bijection",
        statement: "(v,w) -> Psi_3(v,w) is a bijection onto alternating 4x4 with Pf 1",
        kind: Kind::Ring(|t| t.class),
        applies: |n| n == 3,
        run: check_alt4,
    },
    Identity {
        name: "congruence-witness",
        statement: "stable congruence witnesses verify; single-entry perturbations are rejected",
        kind: Kind::Randomized { needs_lift: false },
        applies: |n| n == 3,
        run: check_congruence,
    },
    Identity {
        name: "factorization-witness",
        statement: "lift(l) eps s = phi with s fixing the target verifies; perturbations are rejected",
        kind: Kind::Randomized { needs_lift: true },
        applies: |n| n == 3,
        run: check_factorization,
    },
];

// ---- sampling helpers ----

fn strs(v: &[RingElem]) -> Vec<String> {
    v.iter().map(|e| e.to_string()).collect()
}

fn coords(a: &[RingElem], b: &[RingElem]) -> Value {
    json!({ "a": strs(a), "b": strs(b) })
}

fn quadric_unit(n: usize, seed: u64) -> UnitVector {
    UnitVector::from_point(&sample_quadric_point(n, seed))
}

/// A rational pair with no constraint on `q(a, b)`.
fn free_pair(n: usize, seed: u64) -> (Vec<RingElem>, Vec<RingElem>) {
    let mut s = RationalSampler::new(seed ^ 0x5eed_0000_0000_0000);
    let a = (0..n).map(|_| Q.rational(s.rational())).collect();
    let b = (0..n).map(|_| Q.rational(s.rational())).collect();
    (a, b)
}

/// Runs `f` on generic coordinates (symbolic) or on seeded quadric points
/// and, when `free` is set, on unconstrained rational pairs too.
fn over_pairs(
    n: usize,
    mode: RunMode,
    cfg: &SuiteConfig,
    base: u64,
    ctx: RingCtx,
    free: bool,
    f: impl Fn(&[RingElem], &[RingElem]) -> Outcome,
) -> Outcome {
    if mode == RunMode::Symbolic {
        let (a, b) = ctx.generic_pair();
        return f(&a, &b);
    }
    for k in 0..cfg.seeds {
        let seed = base + k;
        let u = quadric_unit(n, seed);
        f(u.a(), u.b()).map_err(at_sample(seed, coords(u.a(), u.b())))?;
        if free {
            let (a, b) = free_pair(n, seed);
            f(&a, &b).map_err(at_sample(seed, coords(&a, &b)))?;
        }
    }
    Ok(())
}

/// Unit vectors: generic over `S_{2n-1}`, or seeded quadric points.
fn over_units(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64, f: impl Fn(&UnitVector) -> Outcome) -> Outcome {
    if mode == RunMode::Symbolic {
        return f(&UnitVector::generic(n));
    }
    for k in 0..cfg.seeds {
        let u = quadric_unit(n, base + k);
        f(&u).map_err(at_sample(base + k, coords(u.a(), u.b())))?;
    }
    Ok(())
}

fn trial_err(k: u64) -> impl FnOnce(Failure) -> Failure {
    move |mut f| {
        f.detail = format!("trial {k}: {}", f.detail);
        f
    }
}

fn random_sl(size: usize, seed: u64) -> RingMat {
    random_elementary_witness(Q, size, 2 * size, seed).to_matrix()
}

fn random_alternating(size: usize, s: &mut RationalSampler) -> RingMat {
    let mut m = RingMat::zeros(Q, size, size);
    for i in 0..size {
        for j in i + 1..size {
            let v = Q.int(s.int(-3, 3));
            m.set(i, j, v.clone());
            m.set(j, i, -v);
        }
    }
    m
}

fn random_symmetric(size: usize, s: &mut RationalSampler) -> RingMat {
    let mut m = RingMat::zeros(Q, size, size);
    for i in 0..size {
        for j in i..size {
            let v = Q.int(s.int(-3, 3));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

fn bump(m: &RingMat, i: usize, j: usize, by: i64) -> RingMat {
    let mut out = m.clone();
    let c = m.ctx();
    out.set(i, j, m.get(i, j) + &c.int(by));
    out
}

// ---- Suslin matrices ----

fn check_det(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    over_pairs(n, mode, cfg, base, cfg.poly_ctx(n), true, |a, b| {
        let lhs = suslin_alpha(a, b)?.into_matrix().det()?;
        let rhs = q_form(a, b)?.pow(1 << (n - 2));
        if lhs == rhs {
            Ok(())
        } else {
            Err(Failure::new("determinant differs").with(json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() })))
        }
    })
}

fn check_product(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    over_pairs(n, mode, cfg, base, cfg.poly_ctx(n), true, |a, b| {
        let alpha = suslin_alpha(a, b)?.into_matrix();
        let bar = suslin_alpha_bar(a, b)?.into_matrix();
        let q = RingMat::scalar(alpha.ctx(), alpha.rows(), &q_form(a, b)?);
        expect_mat_eq("alpha alpha_bar", &alpha.try_matmul(&bar)?, &q)?;
        expect_mat_eq("alpha_bar alpha", &bar.try_matmul(&alpha)?, &q)
    })
}

fn check_transpose(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    over_pairs(n, mode, cfg, base, cfg.poly_ctx(n), true, |a, b| {
        let bar = suslin_alpha_bar(a, b)?.into_matrix();
        expect_mat_eq("alpha_bar(a,b) vs alpha(b,a)^t", &bar, &suslin_alpha(b, a)?.into_matrix().transpose())
    })
}

fn check_j_laws(n: usize, _: RunMode, _: &SuiteConfig, _: u64) -> Outcome {
    let j = j_matrix(Q, n);
    let jt = j.transpose();
    let id = RingMat::identity(Q, j.rows());
    expect_mat_eq("J J^t", &j.try_matmul(&jt)?, &id)?;
    expect_mat_eq("J^t J", &jt.try_matmul(&j)?, &id)?;
    let sign = if n == 1 { 1 } else { StructConsts::new(Q, n).j_inverse_sign() };
    expect_mat_eq("J^-1", &j.inverse()?, &j.scale(&Q.int(sign)))
}

fn check_e_invertible(n: usize, _: RunMode, _: &SuiteConfig, _: u64) -> Outcome {
    let (e, inv) = (e_matrix(Q, n), e_inverse(Q, n));
    let id = RingMat::identity(Q, e.rows());
    expect_mat_eq("E E^-1", &e.try_matmul(&inv)?, &id)?;
    expect_mat_eq("E^-1 E", &inv.try_matmul(&e)?, &id)
}

fn check_e_form(n: usize, _: RunMode, _: &SuiteConfig, _: u64) -> Outcome {
    let e = e_matrix(Q, n);
    let lhs = e.transpose().try_matmul(&j_matrix(Q, n).transpose())?.try_matmul(&e)?;
    let size = e.rows();
    let rhs = if n.is_multiple_of(4) { sigma(Q, size) } else { -&psi(Q, size) };
    expect_mat_eq("E^t J^t E", &lhs, &rhs)
}

// ---- degree maps ----

fn check_psi_class(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    over_units(n, mode, cfg, base, |u| {
        let p = psi_degree_map(u)?;
        expect(&format!("Psi_{n} is not {}", DegreeClass::for_n(n).name()), degree_class_holds(n, &p)?)
    })
}

fn check_psi_det(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    over_units(n, mode, cfg, base, |u| {
        let d = psi_degree_map(u)?.det()?;
        expect(&format!("det Psi_{n} = {d}"), d.is_one())
    })
}

fn check_pfaffian(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    over_units(n, mode, cfg, base, |u| {
        let pf = psi_degree_map(u)?.pfaffian()?;
        expect(&format!("Pf Psi_{n} = {pf}"), pf.is_one())
    })
}

fn check_psi_unit(n: usize, _: RunMode, _: &SuiteConfig, _: u64) -> Outcome {
    let p = psi_degree_map(&UnitVector::standard(Q, n))?;
    let size = p.rows();
    let expected = if n % 4 == 1 { sigma(Q, size) } else { psi(Q, size) };
    expect_mat_eq("Psi_n(e_n, e_n)", &p, &expected)
}

// ---- Clifford embedding and involution ----

fn check_clifford(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    over_pairs(n, mode, cfg, base, cfg.poly_ctx(n), true, |a, b| {
        let p = phi_embed(a, b)?;
        let q = RingMat::scalar(p.ctx(), 1 << n, &q_form(a, b)?);
        expect_mat_eq("phi(v)^2", p.mul(&p)?.matrix(), &q)
    })
}

fn anti_laws(m: &RingMat, n_: &RingMat) -> Outcome {
    let star = |x: &RingMat| standard_involution(x);
    expect_mat_eq("(MN)*", &star(&m.try_matmul(n_)?)?, &star(n_)?.try_matmul(&star(m)?)?)?;
    expect_mat_eq("(M*)*", &star(&star(m)?)?, m)
}

fn check_involution_anti(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    if mode == RunMode::Symbolic {
        // two independent generic elements of V, over 2n variable pairs
        let c = RingCtx::Poly(2 * n);
        let (x, y) = c.generic_pair();
        let m = phi_embed(&x[..n], &y[..n])?;
        let other = phi_embed(&x[n..], &y[n..])?;
        let prod = m.mul(&other)?;
        anti_laws(m.matrix(), other.matrix())?;
        return anti_laws(prod.matrix(), m.matrix());
    }
    // about eight nonzero entries per row keeps large levels cheap
    let size = 1 << n;
    let random = |s: &mut RationalSampler| {
        RingMat::from_fn(Q, size, size, |_, _| if s.index(size) < 8 { Q.int(s.int(-5, 5)) } else { Q.zero() })
    };
    for k in 0..cfg.seeds {
        let mut s = RationalSampler::new(base + k);
        let m = random(&mut s);
        let other = random(&mut s);
        anti_laws(&m, &other).map_err(trial_err(k))?;
    }
    Ok(())
}

fn check_involution_v(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    over_pairs(n, mode, cfg, base, cfg.poly_ctx(n), true, |a, b| {
        let p = phi_embed(a, b)?;
        expect_mat_eq("phi(v)*", p.star().matrix(), &-p.matrix())
    })
}

// ---- Spin ----

fn lift_seeded(n: usize, seed: u64) -> Result<(RingMat, SpinElem), Failure> {
    let s = random_sl(n, seed);
    let g = lift_hyperbolic_to_spin(&s)?;
    Ok((s, g))
}

fn check_spin_hom(n: usize, _: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    for k in 0..cfg.seeds {
        let run = || -> Outcome {
            let (s1, g1) = lift_seeded(n, 2 * (base + k))?;
            let (_, g2) = lift_seeded(n, 2 * (base + k) + 1)?;
            expect_mat_eq("pi(lift s)", g1.so_matrix().matrix(), hyperbolic_embed(&s1)?.matrix())?;
            let g12 = g1.compose(&g2)?;
            let prod = g1.so_matrix().matrix().try_matmul(g2.so_matrix().matrix())?;
            expect_mat_eq("pi(g1 g2)", g12.so_matrix().matrix(), &prod)
        };
        run().map_err(trial_err(k))?;
    }
    Ok(())
}

fn det_minus_one_twist(h: &RingMat) -> RingMat {
    let mut d = RingMat::identity(Q, h.rows());
    d.set(0, 0, Q.int(-1));
    h * &d
}

fn check_dictionary(_: usize, _: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    for k in 0..cfg.seeds {
        let run = || -> Outcome {
            let h = random_sl(4, base + k);
            spin_certify(&dictionary_element(&h)?)?;
            let twisted = det_minus_one_twist(&h);
            expect("det -1 twist was certified", spin_certify(&dictionary_element(&twisted)?).is_err())
        };
        run().map_err(trial_err(k))?;
    }
    Ok(())
}

/// Group elements for the action checks: dictionary elements at `n = 3`,
/// lifts otherwise.
fn acting_element(n: usize, seed: u64) -> Result<SpinElem, Failure> {
    if n == 3 && seed.is_multiple_of(2) {
        return Ok(spin_certify(&dictionary_element(&random_sl(4, seed))?)?);
    }
    Ok(lift_seeded(n, seed)?.1)
}

fn check_spin_act(n: usize, _: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    // symbolic vectors for the first element, seeded points for all
    let g0 = acting_element(n, base)?;
    let generic = UnitVector::generic(n);
    let v = spin_act(&g0, &generic)?;
    expect("q(g.u) != 1", dot(v.a(), v.b())?.is_one())?;
    expect_vec_eq(&v, &g0.so_matrix().apply(&generic)?)?;
    for k in 0..cfg.seeds {
        let run = || -> Outcome {
            let g = acting_element(n, base + k)?;
            let u = quadric_unit(n, base + k);
            let v = spin_act(&g, &u)?;
            expect_vec_eq(&v, &g.so_matrix().apply(&u)?)
        };
        run().map_err(trial_err(k))?;
    }
    Ok(())
}

fn expect_vec_eq(lhs: &UnitVector, rhs: &UnitVector) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Failure::new("block action and pi(g) disagree")
            .with(json!({ "block": coords(lhs.a(), lhs.b()), "pi": coords(rhs.a(), rhs.b()) })))
    }
}

fn check_translation(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    let trials = if mode == RunMode::Symbolic { cfg.seeds.min(3) } else { 1 };
    for k in 0..trials {
        let h = random_sl(4, base + 7919 * k);
        let g = spin_certify(&dictionary_element(&h)?)?;
        let gp = translation_matrix(&h)?;
        over_units(n, mode, cfg, base, |u| {
            let v = spin_act(&g, u)?;
            let gp = gp.lift_to(u.ctx())?;
            let rhs = gp.try_matmul(&psi_degree_map(u)?)?.try_matmul(&gp.transpose())?;
            expect_mat_eq("Psi(g.u) vs g' Psi(u) g'^t", &psi_degree_map(&v)?, &rhs)
        })
        .map_err(trial_err(k))?;
    }
    Ok(())
}

fn check_hyperbolic(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    // s = prod e_{i,i+1}(x_i) prod e_{i+1,i}(y_i)
    let build = |xs: &[RingElem], ys: &[RingElem]| -> RingMat {
        let ctx = xs[0].ctx();
        let mut factors = Vec::new();
        for (i, x) in xs.iter().enumerate().take(n - 1) {
            factors.push((i, i + 1, x.clone()));
        }
        for (i, y) in ys.iter().enumerate().take(n - 1) {
            factors.push((i + 1, i, y.clone()));
        }
        ElementaryWitness::new(ctx, n, factors).expect("valid factors").to_matrix()
    };
    let run = |xs: &[RingElem], ys: &[RingElem]| -> Outcome {
        let h = hyperbolic_embed(&build(xs, ys))?;
        expect("H(s) is not in SO", h.n() == n)
    };
    if mode == RunMode::Symbolic {
        let (x, y) = RingCtx::Poly(n).generic_pair();
        return run(&x, &y);
    }
    for k in 0..cfg.seeds {
        let (x, y) = free_pair(n, base + k);
        run(&x, &y).map_err(at_sample(base + k, coords(&x, &y)))?;
    }
    Ok(())
}

fn check_even_embedding(n: usize, _: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    let (e, inv) = (e_matrix(Q, n), e_inverse(Q, n));
    let form = FormClass::OrthogonalWrt(sigma(Q, 1 << (n - 1)));
    for k in 0..cfg.seeds {
        let run = || -> Outcome {
            let (_, g) = lift_seeded(n, base + k)?;
            let (p1, p2) = g.element().even_blocks();
            for p in [p1, p2] {
                let t = inv.try_matmul(&p)?.try_matmul(&e)?;
                expect("E^-1 phi_i E is not sigma-orthogonal", t.classify_form(&form)?)?;
            }
            Ok(())
        };
        run().map_err(trial_err(k))?;
    }
    Ok(())
}

// ---- orbits and witnesses ----

fn check_power_rows(n: usize, _: RunMode, _: &SuiteConfig, _: u64) -> Outcome {
    for m in 1..=12 {
        let v = power_row_section(n, m);
        let d = dot(v.a(), v.section().expect("constructed with a section"))?;
        expect(&format!("m = {m}: dot product is {d}"), d.is_one())?;
    }
    Ok(())
}

/// A random integer alternating 4x4 matrix moved to Pfaffian 1 by the
/// congruence `diag(1/p, 1, 1, 1)`.
fn random_pf_one(s: &mut RationalSampler) -> RingMat {
    loop {
        let a = random_alternating(4, s);
        let pf = a.pfaffian().expect("alternating").as_rational().expect("constant");
        if pf == rational(0, 1) {
            continue;
        }
        let mut d = RingMat::identity(Q, 4);
        d.set(0, 0, Q.rational(pf.recip()));
        return &(&d.transpose() * &a) * &d;
    }
}

fn check_alt4(n: usize, mode: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    over_units(n, mode, cfg, base, |u| {
        let a = psi_degree_map(u)?;
        let back = alt4_to_unit_vector(&a)?;
        expect("alt4 -> unit vector -> alt4 is not the identity", &back == u)
    })?;
    for k in 0..cfg.seeds {
        let mut s = RationalSampler::new(base + k);
        let a = random_pf_one(&mut s);
        let run = || -> Outcome {
            let u = alt4_to_unit_vector(&a)?;
            expect_mat_eq("Psi_3(alt4 -> unit vector)", &psi_degree_map(&u)?, &a)
        };
        run().map_err(trial_err(k))?;
    }
    Ok(())
}

fn rejected(r: Result<bool, crate::orbits::OrbitError>) -> bool {
    !matches!(r, Ok(true))
}

fn check_congruence(_: usize, _: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    let i = 1;
    let total = 4 + 4 + 2 * i;
    for k in 0..cfg.seeds {
        let seed = base + k;
        let mut s = RationalSampler::new(seed);
        let run = |s: &mut RationalSampler| -> Outcome {
            // E = diag(E1, T) with E1 acting on the first block and T a
            // product of psi_2-preserving shears on the tail
            let e1 = random_elementary_witness(Q, 4, 5, seed);
            let mut tail = Vec::new();
            for b in 0..(total - 4) / 2 {
                let (p, r) = (4 + 2 * b, 5 + 2 * b);
                let l = Q.int(s.int(1, 3));
                tail.push(if s.coin() { (p, r, l) } else { (r, p, l) });
            }
            let mut factors = e1.factors().to_vec();
            factors.extend(tail);
            let w = ElementaryWitness::new(Q, total, factors)?;
            let e1m = e1.to_matrix();

            for (flavor, n_form) in [(Flavor::WE, random_alternating(4, s)), (Flavor::SSim, random_symmetric(4, s))] {
                let witness = if flavor == Flavor::SSim { ElementaryWitness::new(Q, total, e1.factors().to_vec())? } else { w.clone() };
                let m = e1m.transpose().try_matmul(&n_form)?.try_matmul(&e1m)?;
                let ok = verify_congruence_witness(&m, &n_form, i, &CongruenceMap::Elementary(witness.clone()), flavor)?;
                expect(&format!("{flavor}: self-generated witness rejected"), ok)?;
                // appending a factor and its inverse changes nothing
                let pad = random_elementary_witness(Q, total, 1, seed ^ 0xabc);
                let padded = witness.then(&pad).then(&pad.inverse());
                let ok = verify_congruence_witness(&m, &n_form, i, &CongruenceMap::Elementary(padded), flavor)?;
                expect(&format!("{flavor}: padded witness rejected"), ok)?;
                // perturbations
                let (a, b) = (s.index(4), s.index(4));
                let (a, b) = if a == b { (a, (a + 1) % 4) } else { (a, b) };
                let paired = if flavor == Flavor::SSim { bump(&bump(&m, a, b, 1), b, a, 1) } else { bump(&bump(&m, a, b, 1), b, a, -1) };
                let map = CongruenceMap::Elementary(witness.clone());
                expect(&format!("{flavor}: perturbed M accepted"), rejected(verify_congruence_witness(&paired, &n_form, i, &map, flavor)))?;
                let single = bump(&n_form, a, b, 1);
                expect(&format!("{flavor}: perturbed N accepted"), rejected(verify_congruence_witness(&m, &single, i, &map, flavor)))?;
            }

            // W_SL witness from the translation law
            let u = quadric_unit(3, seed);
            let h = random_sl(4, seed);
            let g = spin_certify(&dictionary_element(&h)?)?;
            let v = spin_act(&g, &u)?;
            let gp = translation_matrix(&h)?;
            let (m, n_form) = (psi_degree_map(&v)?, psi_degree_map(&u)?);
            let e = gp.transpose().block_sum(&RingMat::identity(Q, 4 + 2 * i))?;
            let map = CongruenceMap::Matrix(e);
            expect("W_SL: translation-law witness rejected", verify_congruence_witness(&m, &n_form, i, &map, Flavor::WSL)?)?;
            let (a, b) = (s.index(4), s.index(4));
            let (a, b) = if a == b { (a, (a + 1) % 4) } else { (a, b) };
            let paired = bump(&bump(&m, a, b, 1), b, a, -1);
            expect("W_SL: perturbed M accepted", rejected(verify_congruence_witness(&paired, &n_form, i, &map, Flavor::WSL)))?;
            let single = bump(&m, a, b, 1);
            expect("W_SL: non-alternating M accepted", rejected(verify_congruence_witness(&single, &n_form, i, &map, Flavor::WSL)))
        };
        run(&mut s).map_err(trial_err(k))?;
    }
    Ok(())
}

/// A self-generated factorization over Q for `n = 3`.
pub(crate) fn sample_factorization(seed: u64) -> Result<(SpinElem, Decomposition, UnitVector), Failure> {
    let mut s = RationalSampler::new(seed);
    let target = quadric_unit(3, seed);
    let lambda = random_sl(3, seed ^ 1);
    let eps = vec![
        EpinFactor::dictionary(random_elementary_witness(Q, 4, 3, seed ^ 2))?,
        EpinFactor::hyperbolic(random_elementary_witness(Q, 3, 2, seed ^ 3))?,
    ];
    let dir: Vec<RingElem> = (0..4).map(|_| Q.int(s.int(-3, 3))).collect();
    let h = stabilizer_block(&target, &dir, &Q.int(s.int(1, 5)))?;
    let stabilizer = dictionary_element(&h)?;
    let d = Decomposition { lambda, epin: eps, stabilizer };
    let phi = spin_certify(&d.compose()?)?;
    Ok((phi, d, target))
}

fn bump_clifford(g: &CliffordElem, s: &mut RationalSampler) -> Result<CliffordElem, Failure> {
    let size = g.matrix().rows();
    Ok(CliffordElem::new(bump(g.matrix(), s.index(size), s.index(size), 1))?)
}

fn check_factorization(_: usize, _: RunMode, cfg: &SuiteConfig, base: u64) -> Outcome {
    for k in 0..cfg.seeds {
        let seed = base + k;
        let run = || -> Outcome {
            let (phi, d, target) = sample_factorization(seed)?;
            factorization_check(&phi, &d, &target)?;
            let mut s = RationalSampler::new(seed ^ 0xfeed);
            let mut variants = Vec::new();
            let mut p = d.clone();
            p.lambda = bump(&d.lambda, s.index(3), s.index(3), 1);
            variants.push(("lambda", p));
            for f in 0..d.epin.len() {
                let mut p = d.clone();
                p.epin[f].element = bump_clifford(&d.epin[f].element, &mut s)?;
                variants.push(("epin", p));
            }
            let mut p = d.clone();
            p.stabilizer = bump_clifford(&d.stabilizer, &mut s)?;
            variants.push(("stabilizer", p));
            for (what, p) in variants {
                expect(&format!("perturbed {what} accepted"), factorization_check(&phi, &p, &target).is_err())?;
            }
            Ok(())
        };
        run().map_err(trial_err(k))?;
    }
    Ok(())
}
