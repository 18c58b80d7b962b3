//! The subcommands. Each one turns a case file into a [`Report`].

use cohomology_engine::{
    coinflation, cup, homology_differential, Cochain, FiniteAmbient, FiniteSupportChain, HyperCocycle, HyperH1, ScalarPairing,
    TateGroup,
};
use exact_lattice::matrix::vadd;
use exact_lattice::{BigInt, Cyclotomic, IntMatrix, QZ};
use finite_group::{CentralExtension, Cocycle2, FiniteGroup, GroupAction};
use kottwitz_sign::{sign_induction, sign_product, twisted_sign, Normalization, RepChoice};
use projective_characters::fixtures::induction_fixtures;
use projective_characters::{block_twisted_trace, induced_cocycle_check, irr_with_central_char_in, twisted_orthogonality, CycMatrix, ProjectiveError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tori_llc::fixtures::{element_pairs, random_suite, SuiteBounds};
use tori_llc::{character_identity, compute_h, extensions_with, packet, verify_iso, Extensions, HTable, ToriCase};
use unramified_weil::{
    hyper_pairing, kottwitz_character, kottwitz_perfectness, langlands_character, tn_hom, tn_iso, torsion_characters, torsion_point,
    DualCocycle, TwoTermComplex,
};

use crate::cache::DiskCache;
use crate::casefile::{int_vec, parse, qz_string, CaseFile, InputError};
use crate::report::{digest_bytes, Outcome, Recorder, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Cohomology,
    Pairing,
    Sign,
    Projirr,
    ToriVerify,
    RandomSuite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Pairing => "pairing",
            Command::Sign => "sign",
            Command::Projirr => "projirr",
            Command::ToriVerify => "tori-verify",
            Command::RandomSuite => "random-suite",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub suite_size: Option<usize>,
    pub filter: Option<glob::Pattern>,
}

/// Largest group for which the projective checks run over all pairs of elements.
const ORTH_LIMIT: usize = 96;
/// Cap on enumerated cohomology classes.
const CLASS_LIMIT: usize = 4096;

pub fn run(cmd: Command, input: Option<&[u8]>, opts: &Options, cache: &DiskCache) -> Result<Report, InputError> {
    let file = match input {
        Some(bytes) => {
            let text = std::str::from_utf8(bytes).map_err(|_| InputError::new("input", "not valid UTF-8"))?;
            Some(parse(text)?)
        }
        None if cmd == Command::RandomSuite => None,
        None => return Err(InputError::new("input", format!("{} needs --input", cmd.name()))),
    };
    let digest = input.map(digest_bytes);
    let file_suite = file.as_ref().and_then(|f| f.suite.clone()).unwrap_or_default();
    let seed = opts.seed.or(file_suite.seed).unwrap_or(0);
    let mut rec = Recorder::new(opts.filter.clone());
    let file = file.as_ref();
    match cmd {
        Command::Cohomology => cohomology(&mut rec, file.unwrap(), seed, opts.suite_size.unwrap_or(50))?,
        Command::Pairing => pairing(&mut rec, file.unwrap(), seed)?,
        Command::Sign => sign(&mut rec, file.unwrap())?,
        Command::Projirr => projirr(&mut rec, file.unwrap(), seed, opts.suite_size.unwrap_or(100), cache)?,
        Command::ToriVerify => tori_verify(&mut rec, file.unwrap(), seed, opts.suite_size.unwrap_or(2), cache)?,
        Command::RandomSuite => {
            let size = opts.suite_size.or(file_suite.size).unwrap_or(50);
            suite(&mut rec, seed, size, cache)
        }
    }
    Ok(rec.finish(cmd.name(), digest, seed))
}

fn qzs(v: &[QZ]) -> Value {
    v.iter().map(qz_string).collect()
}

fn ints(v: &[BigInt]) -> Value {
    serde_json::to_value(int_vec(v)).expect("integers serialize")
}

fn cyc(c: &Cyclotomic) -> Value {
    Value::String(c.to_string())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_vec(rng: &mut ChaCha8Rng, rank: usize, bound: i64) -> Vec<BigInt> {
    (0..rank).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

fn random_cochain(rng: &mut ChaCha8Rng, m: &GroupAction, degree: usize) -> Cochain {
    let n = m.group().order().pow(degree as u32);
    let vals = (0..n).map(|_| random_vec(rng, m.rank(), 5)).collect();
    Cochain::from_values(degree, m.clone(), vals).expect("shapes match")
}

fn random_chain(rng: &mut ChaCha8Rng, order: usize, degree: usize, rank: usize) -> FiniteSupportChain<usize> {
    let terms = rng.gen_range(1..=4);
    let entries: Vec<(Vec<usize>, Vec<BigInt>)> = (0..terms)
        .map(|_| ((0..degree).map(|_| rng.gen_range(0..order)).collect(), random_vec(rng, rank, 4)))
        .collect();
    FiniteSupportChain::from_entries(degree, rank, entries)
}

fn cohomology(rec: &mut Recorder, file: &CaseFile, seed: u64, count: usize) -> Result<(), InputError> {
    let input = file.torus()?;
    let case = input.case()?;
    let torus = case.torus();
    let q_module = torus.action().clone();
    let a_module = case.model().component().clone();
    let n = torus.model().degree();

    let mut orders: Vec<Option<BigInt>> = Vec::new();
    for deg in -1..=2 {
        let h = TateGroup::new(&q_module, deg).map_err(|e| InputError::new("galois", format!("{e}")))?;
        orders.push(h.order());
        rec.check(format!("cohomology.tate.{deg}"), "classify inverts representative on the Tate group", json!({ "degree": deg }), || {
            let elems = h.elements(CLASS_LIMIT).ok_or("too many classes to enumerate")?;
            let bad = elems.iter().find(|e| h.classify_vec(&h.representative_vec(e)).ok().as_ref() != Some(*e));
            Ok(Outcome::new(
                bad.is_none(),
                json!({ "order": elems.len(), "bad_class": bad.map(|b| ints(b)) }),
            ))
        });
    }
    let show = |o: &Option<BigInt>| o.as_ref().map(|v| v.to_string());
    rec.check("cohomology.periodicity", "Tate cohomology of a cyclic group has period two", json!({}), || {
        Ok(Outcome::new(
            orders[0] == orders[2] && orders[1] == orders[3],
            json!({ "orders": orders.iter().map(show).collect::<Vec<_>>() }),
        ))
    });
    rec.check("cohomology.z-table", "z is the image of z(sigma) under the Tate-Nakayama map", json!({}), || {
        let z = case.z_cochain();
        let bad = (0..n).find(|&i| z.at(&[i]) != &input.z[i]);
        Ok(Outcome::new(bad.is_none(), json!({ "zeta": ints(case.zeta()), "first_mismatch": bad })))
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, m) in [("Q", &q_module), ("A", &a_module)] {
        rec.check(format!("cohomology.dd-zero.{name}"), "d d = 0 on random cochains", json!({ "seed": seed, "count": count }), || {
            for k in 0..count {
                let x = random_cochain(&mut rng, m, k % 3);
                if !x.differential().differential().is_zero() {
                    return Ok(Outcome::new(false, json!({ "index": k, "degree": k % 3 })));
                }
            }
            Ok(Outcome::new(true, json!({ "cochains": count })))
        });
        rec.check(format!("cohomology.leibniz.{name}"), "d(x cup y) = dx cup y + (-1)^p x cup dy", json!({ "seed": seed, "count": count }), || {
            let triv = GroupAction::trivial(m.group().clone(), 1);
            for k in 0..count {
                let (p, q) = (k % 2, (k / 2) % 2);
                let x = random_cochain(&mut rng, &triv, p);
                let y = random_cochain(&mut rng, m, q);
                let lhs = cup(&x, &y, m, &ScalarPairing).map_err(err)?.differential();
                let u = cup(&x.differential(), &y, m, &ScalarPairing).map_err(err)?;
                let v = cup(&x, &y.differential(), m, &ScalarPairing).map_err(err)?;
                let rhs = if p == 0 { u.add(&v) } else { u.sub(&v) };
                if lhs != rhs {
                    return Ok(Outcome::new(false, json!({ "index": k, "p": p, "q": q })));
                }
            }
            Ok(Outcome::new(true, json!({ "pairs": count })))
        });
    }
    rec.check("cohomology.coinflation", "coinflation from Z/2n to Z/n commutes with the differential", json!({ "seed": seed, "count": count }), || {
        let top = GroupAction::from_generators(FiniteGroup::cyclic(2 * n), torus.rank(), &[(1 % (2 * n), torus.sigma().clone())]).map_err(err)?;
        let wl = FiniteAmbient { action: top };
        let wk = FiniteAmbient { action: q_module.clone() };
        for k in 0..count {
            let degree = 1 + k % 3;
            let y = random_chain(&mut rng, 2 * n, degree, torus.rank());
            let lhs = homology_differential(&wk, &coinflation(&y, |g| g % n));
            let rhs = coinflation(&homology_differential(&wl, &y), |g| g % n);
            if lhs != rhs || (degree >= 2 && !homology_differential(&wl, &homology_differential(&wl, &y)).is_zero()) {
                return Ok(Outcome::new(false, json!({ "index": k, "degree": degree })));
            }
        }
        Ok(Outcome::new(true, json!({ "chains": count })))
    });
    let g = case.group();
    for a in g.elements() {
        rec.check(format!("cohomology.hyper-exactness.a{a}"), "long exact sequence of X --(1 - a^-1)--> X", json!({ "a": a }), || {
            let f = &IntMatrix::identity(torus.rank()) - a_module.matrix(g.inv(a));
            let h = HyperH1::new(&q_module, &q_module, &f).map_err(err)?;
            let r = h.check_exactness();
            Ok(Outcome::new(r.holds(), json!({ "report": format!("{r:?}") })))
        });
    }
    Ok(())
}

fn sample_hyper(rng: &mut ChaCha8Rng, cx: &TwoTermComplex) -> HyperCocycle {
    let h = cx.hyper_group();
    let g = h.group();
    let nf: Vec<BigInt> = (0..g.nf_len()).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
    h.representative(&g.reduce(&nf))
}

fn add_hyper(a: &HyperCocycle, b: &HyperCocycle) -> HyperCocycle {
    HyperCocycle {
        z: a.z.add(&b.z),
        c: vadd(&a.c, &b.c),
    }
}

fn pairing(rec: &mut Recorder, file: &CaseFile, seed: u64) -> Result<(), InputError> {
    let case = file.torus()?.case()?;
    let torus = case.torus();
    let r = torus.rank();
    rec.check("pairing.tn-bijective", "the Tate-Nakayama map is an isomorphism", json!({}), || {
        Ok(Outcome::new(tn_hom(torus).is_isomorphism(), json!({})))
    });
    rec.check("pairing.perfectness", "the Kottwitz pairing is perfect", json!({}), || {
        let rep = kottwitz_perfectness(torus, CLASS_LIMIT).ok_or("too many classes to enumerate")?;
        Ok(Outcome::new(
            rep.perfect(),
            json!({
                "classes": rep.classes,
                "characters": rep.characters,
                "left_kernel_trivial": rep.left_kernel_trivial,
                "right_kernel_trivial": rep.right_kernel_trivial,
            }),
        ))
    });
    rec.check("pairing.kottwitz-edge", "the pairing with (z, 0) against (0, s) is the Kottwitz character", json!({}), || {
        let cx = TwoTermComplex::twisted(torus, &IntMatrix::identity(r)).map_err(err)?;
        let h = TateGroup::new(torus.action(), -1).map_err(err)?;
        let classes = h.elements(64).ok_or("too many classes to enumerate")?;
        let chars = torsion_characters(torus, 64).ok_or("too many characters to enumerate")?;
        let zero = vec![QZ::zero(); r];
        let mut checked = 0;
        for chi in &chars {
            let s = torsion_point(torus, chi).map_err(err)?;
            let d = DualCocycle::from_frobenius(&cx, &zero, s.clone());
            for c in &classes {
                let z = tn_iso(torus, &h.representative_vec(c)).map_err(err)?;
                let x = HyperCocycle { z: z.clone(), c: vec![BigInt::from(0); r] };
                let lhs = hyper_pairing(&cx, &x, &d).map_err(err)?;
                let rhs = kottwitz_character(torus, &z, &s).map_err(err)?;
                if lhs != rhs {
                    return Ok(Outcome::new(false, json!({ "class": ints(c), "s": qzs(&s), "pairing": qz_string(&lhs), "kottwitz": qz_string(&rhs) })));
                }
                checked += 1;
            }
        }
        Ok(Outcome::new(true, json!({ "pairs": checked })))
    });
    rec.check("pairing.langlands-edge", "the pairing with (0, c) against the parameter is the Langlands character", json!({}), || {
        let cx = TwoTermComplex::twisted(torus, &IntMatrix::identity(r)).map_err(err)?;
        let d = DualCocycle::from_frobenius(&cx, case.p(), vec![QZ::zero(); r]);
        if !d.is_valid(&cx) {
            return Err("the parameter does not give a dual cocycle".into());
        }
        for c in torus.action().invariants_basis() {
            let x = HyperCocycle {
                z: Cochain::zero(1, torus.action().clone()),
                c: c.clone(),
            };
            let lhs = hyper_pairing(&cx, &x, &d).map_err(err)?;
            let rhs = langlands_character(torus, case.parameter(), &c).map_err(err)?;
            if lhs != rhs {
                return Ok(Outcome::new(false, json!({ "c": ints(&c), "pairing": qz_string(&lhs), "langlands": qz_string(&rhs) })));
            }
        }
        Ok(Outcome::new(true, json!({})))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let neg_p: Vec<QZ> = case.p().iter().map(|v| -v).collect();
    for &b in case.embedding() {
        rec.check(
            format!("pairing.bilinear.a{b}"),
            "the hypercohomology pairing is additive and ignores coboundaries",
            json!({ "a": b, "seed": seed }),
            || {
                let cx = TwoTermComplex::twisted(torus, case.model().component().matrix(b)).map_err(err)?;
                let d = DualCocycle::from_frobenius(&cx, &neg_p, case.s(b).to_vec());
                if !d.is_valid(&cx) {
                    return Err("(-p, s_a) is not a dual cocycle".into());
                }
                let p = |x: &HyperCocycle, d: &DualCocycle| hyper_pairing(&cx, x, d).map_err(err);
                for k in 0..8 {
                    let x1 = sample_hyper(&mut rng, &cx);
                    let x2 = sample_hyper(&mut rng, &cx);
                    let t = random_vec(&mut rng, r, 3);
                    let bd = HyperCocycle {
                        z: Cochain::constant(torus.action().clone(), t.clone()).differential(),
                        c: cx.map().mul_vec(&t),
                    };
                    let u: Vec<QZ> = (0..r).map(|_| QZ::new(rng.gen_range(0..12), 12)).collect();
                    let d2 = d.add(&DualCocycle::coboundary(&cx, &u));
                    let base = p(&x1, &d)?;
                    let additive = p(&add_hyper(&x1, &x2), &d)? == &base + &p(&x2, &d)?;
                    let closed = p(&add_hyper(&x1, &bd), &d)? == base;
                    let dual_closed = p(&x1, &d2)? == base;
                    if !(additive && closed && dual_closed) {
                        return Ok(Outcome::new(
                            false,
                            json!({ "sample": k, "additive": additive, "coboundary": closed, "dual_coboundary": dual_closed }),
                        ));
                    }
                }
                Ok(Outcome::new(true, json!({ "samples": 8 })))
            },
        );
    }
    Ok(())
}

fn sign(rec: &mut Recorder, file: &CaseFile) -> Result<(), InputError> {
    let input = file.sign()?;
    let d = &input.data;
    for (k, xi) in input.classes.iter().enumerate() {
        let xi_json = qzs(xi.values());
        let base = twisted_sign(d, xi, Normalization::Standard, RepChoice::First);
        rec.check(format!("sign.value.{k}"), "the twisted sign is a square root of 1", json!({ "xi": xi_json }), || {
            let s = base.as_ref().map_err(err)?;
            Ok(Outcome::new(
                (s.sign == 1 || s.sign == -1) && s.value.scale_i64(2).is_zero(),
                json!({ "sign": s.sign, "lambda": s.lambda, "value": qz_string(&s.value), "image_order": s.image.order }),
            ))
        });
        if let Some(e) = input.expected {
            rec.check(format!("sign.expected.{k}"), "the sign has the expected value", json!({ "xi": xi_json, "expected": e }), || {
                let s = base.as_ref().map_err(err)?;
                Ok(Outcome::new(s.sign == e, json!({ "sign": s.sign, "expected": e })))
            });
        }
        rec.check(format!("sign.representatives.{k}"), "the sign does not depend on orbit representatives", json!({ "xi": xi_json }), || {
            let s = base.as_ref().map_err(err)?;
            for choice in [RepChoice::Last, RepChoice::Index(1), RepChoice::Index(2)] {
                let o = twisted_sign(d, xi, Normalization::Standard, choice).map_err(err)?;
                if o.sign != s.sign || o.image.order != s.image.order {
                    return Ok(Outcome::new(false, json!({ "choice": format!("{choice:?}"), "sign": o.sign })));
                }
            }
            Ok(Outcome::new(true, json!({ "sign": s.sign })))
        });
        rec.check(format!("sign.normalization.{k}"), "the sign does not depend on the invariant normalization", json!({ "xi": xi_json }), || {
            let s = base.as_ref().map_err(err)?;
            let o = twisted_sign(d, xi, Normalization::Opposite, RepChoice::First).map_err(err)?;
            Ok(Outcome::new(o.sign == s.sign, json!({ "standard": s.sign, "opposite": o.sign })))
        });
        rec.check(format!("sign.induction.{k}"), "the sign is invariant under induction", json!({ "xi": xi_json }), || {
            for n in 2..=3 {
                let r = sign_induction(d, xi, n, Normalization::Standard).map_err(err)?;
                if !r.holds() {
                    return Ok(Outcome::new(false, json!({ "n": n, "base": r.base, "induced": r.induced, "lambda_matches": r.lambda_matches })));
                }
            }
            Ok(Outcome::new(true, json!({ "degrees": [2, 3] })))
        });
        rec.check(format!("sign.product.{k}"), "the sign is multiplicative", json!({ "xi": xi_json }), || {
            let r = sign_product(d, xi, d, xi, Normalization::Standard).map_err(err)?;
            Ok(Outcome::new(r.holds(), json!({ "first": r.first, "second": r.second, "product": r.product })))
        });
    }
    Ok(())
}

fn tables(cache: &DiskCache) -> impl FnMut(&FiniteGroup) -> Result<std::sync::Arc<projective_characters::CharacterTable>, ProjectiveError> + '_ {
    move |g| cache.table(g).map_err(ProjectiveError::Table)
}

fn projective_checks(rec: &mut Recorder, name: &str, cocycle: &Cocycle2, cache: &DiskCache) {
    let ext = CentralExtension::new(cocycle.clone());
    let m = ext.modulus();
    let e = ext.group();
    for k in 0..m {
        let psi = QZ::new(k as i64, m as i64);
        let set = cache
            .table(e)
            .map_err(ProjectiveError::Table)
            .and_then(|t| irr_with_central_char_in(&ext, &psi, t))
            .map_err(err);
        let inputs = json!({ "cocycle": name, "psi": qz_string(&psi) });
        rec.check(format!("projirr.{name}.psi{k}.count"), "irreducibles with central character psi are counted by regular classes", inputs.clone(), || {
            let set = set.as_ref().map_err(Clone::clone)?;
            Ok(Outcome::new(
                set.len() == set.regular_class_count() && set.sum_of_squares() == ext.base().order(),
                json!({ "members": set.len(), "regular_classes": set.regular_class_count(), "sum_of_squares": set.sum_of_squares(), "degrees": set.degrees() }),
            ))
        });
        rec.check(format!("projirr.{name}.psi{k}.orthogonality"), "twisted orthogonality on all pairs of elements", inputs, || {
            let set = set.as_ref().map_err(Clone::clone)?;
            if e.order() > ORTH_LIMIT {
                return Err(format!("extension of order {} is above the sweep limit {ORTH_LIMIT}", e.order()));
            }
            let mut pairs = 0;
            for x in e.elements() {
                for y in e.elements() {
                    let r = twisted_orthogonality(set, x, y);
                    let ok = if r.centralizing.centralizing { r.agree } else { r.table_side.is_zero() };
                    if !ok {
                        return Ok(Outcome::new(false, json!({ "e": x, "e2": y, "table": cyc(&r.table_side), "formula": cyc(&r.formula_side) })));
                    }
                    pairs += 1;
                }
            }
            Ok(Outcome::new(true, json!({ "pairs": pairs })))
        });
    }
}

fn projirr(rec: &mut Recorder, file: &CaseFile, seed: u64, count: usize, cache: &DiskCache) -> Result<(), InputError> {
    let case = file.torus()?.case()?;
    let a = case.group();
    rec.check("projirr.table", "the character table of A satisfies both orthogonality relations", json!({ "order": a.order() }), || {
        let t = cache.table(a).map_err(err)?;
        t.verify().map_err(err)?;
        Ok(Outcome::new(true, json!({ "classes": t.num_classes(), "degrees": t.degrees() })))
    });
    match compute_h(&case) {
        Ok(h) => {
            projective_checks(rec, "alpha", &h.alpha_bar, cache);
            projective_checks(rec, "beta", &h.beta_bar, cache);
        }
        Err(e) => rec.check("projirr.cocycles", "the cocycles of the case can be built", json!({}), || Err(err(e))),
    }
    for (i, f) in induction_fixtures().iter().enumerate() {
        rec.check(format!("projirr.tensor-induction.{i}"), "the tensor induced cocycle is the corestriction", json!({ "fixture": f.name }), || {
            let r = induced_cocycle_check(&f.big, &f.emb, &f.section, &f.p).map_err(err)?;
            Ok(Outcome::new(r.equal && r.cohomologous, json!({ "fixture": f.name, "dim": r.dim, "equal": r.equal })))
        });
    }
    rec.check("projirr.block-trace", "trace of the shifted tensor product equals the trace of the product", json!({ "seed": seed, "count": count }), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..count {
            let d = rng.gen_range(1..=3usize);
            let n = rng.gen_range(1..=4usize);
            let mat = |rng: &mut ChaCha8Rng| {
                CycMatrix::from_rows((0..d).map(|_| (0..d).map(|_| Cyclotomic::from_i64(rng.gen_range(-3..=3))).collect()).collect())
            };
            let phis: Vec<CycMatrix> = (0..n).map(|_| mat(&mut rng)).collect();
            let t = mat(&mut rng);
            let r = block_twisted_trace(&phis, &t).map_err(err)?;
            if !r.equal {
                return Ok(Outcome::new(false, json!({ "index": k, "lhs": cyc(&r.lhs), "rhs": cyc(&r.rhs) })));
            }
        }
        Ok(Outcome::new(true, json!({ "tuples": count })))
    });
    Ok(())
}

fn h_json(case: &ToriCase, h: &HTable) -> Value {
    case.embedding().iter().zip(&h.values).map(|(a, v)| json!([a, qz_string(v)])).collect()
}

fn tori_checks(rec: &mut Recorder, prefix: &str, case: &ToriCase, rng: &mut ChaCha8Rng, samples: usize, cache: &DiskCache, per_pair: bool) {
    let h = match compute_h(case) {
        Ok(h) => h,
        Err(e) => {
            rec.check(format!("{prefix}.h"), "h can be computed", json!({}), || Err(err(e)));
            return;
        }
    };
    rec.check(format!("{prefix}.iso"), "h(a) + h(b) - h(ab) = alpha(a, b) - beta(a, b)", json!({ "h": h_json(case, &h) }), || {
        let r = verify_iso(case, &h);
        let first = r.failures().next().map(|p| json!({ "a": p.a, "b": p.b, "lhs": qz_string(&p.lhs), "rhs": qz_string(&p.rhs) }));
        Ok(Outcome::new(r.holds(), json!({ "pairs": r.pairs.len(), "h": h_json(case, &h), "first_failure": first })))
    });
    let ext: Result<Extensions, String> = extensions_with(&h, tables(cache)).map_err(err);
    rec.check(format!("{prefix}.packet"), "the packet is in bijection with Irr(E^phi, id)", json!({}), || {
        let ext = ext.as_ref().map_err(Clone::clone)?;
        let pk = packet(case, &h, ext);
        let members: Vec<Value> = pk.members.iter().map(|m| json!({ "dim": m.dim, "partner": m.partner, "generic": m.generic })).collect();
        Ok(Outcome::new(
            pk.holds(),
            json!({ "members": members, "stabilizer_order": pk.stabilizer_order, "regular_classes": pk.regular_classes, "bijective": pk.bijective }),
        ))
    });
    let Ok(ext) = ext else { return };
    let pairs = element_pairs(rng, case, samples);
    if per_pair {
        for (k, pair) in pairs.iter().enumerate() {
            let inputs = json!({ "t": ints(&pair.t), "a": pair.a, "sdot": qzs(&pair.sdot), "b": pair.b });
            rec.check(format!("{prefix}.character.{k}"), "representation side = closed form = endoscopic side", inputs.clone(), || {
                let r = character_identity(case, &h, &ext, pair).map_err(err)?;
                Ok(Outcome::new(
                    r.holds(),
                    json!({
                        "pair": inputs,
                        "conjugators": r.conjugators,
                        "representation": cyc(&r.representation),
                        "closed_form": cyc(&r.closed_form),
                        "endoscopic": cyc(&r.endoscopic),
                    }),
                ))
            });
        }
    } else {
        rec.check(format!("{prefix}.character"), "representation side = closed form = endoscopic side", json!({ "pairs": pairs.len() }), || {
            let mut vanishing = 0;
            for pair in &pairs {
                let r = character_identity(case, &h, &ext, pair).map_err(err)?;
                if !r.holds() {
                    return Ok(Outcome::new(
                        false,
                        json!({
                            "t": ints(&pair.t), "a": pair.a, "sdot": qzs(&pair.sdot), "b": pair.b,
                            "representation": cyc(&r.representation), "closed_form": cyc(&r.closed_form), "endoscopic": cyc(&r.endoscopic),
                        }),
                    ));
                }
                vanishing += r.vanishing() as usize;
            }
            Ok(Outcome::new(true, json!({ "pairs": pairs.len(), "vanishing": vanishing })))
        });
    }
}

fn tori_verify(rec: &mut Recorder, file: &CaseFile, seed: u64, samples: usize, cache: &DiskCache) -> Result<(), InputError> {
    let case = file.torus()?.case()?;
    rec.check("tori.choices", "t_a and s_a solve their defining equations", json!({}), || {
        Ok(Outcome::new(
            case.check_choices(),
            json!({ "z_fixers": case.z_fixers(), "phi_fixers": case.phi_fixers(), "stabilizer": case.embedding() }),
        ))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    tori_checks(rec, "tori", &case, &mut rng, samples.max(1), cache, true);
    Ok(())
}

/// Component groups of order at most this get the character identity sweep.
const SUITE_CHARACTER_LIMIT: usize = 6;

fn suite(rec: &mut Recorder, seed: u64, size: usize, cache: &DiskCache) {
    let cases = random_suite(seed, size, &SuiteBounds::default());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for (i, g) in cases.iter().enumerate() {
        let prefix = format!("suite.{i}.{}", g.group.replace(' ', ""));
        if g.case.group().order() <= SUITE_CHARACTER_LIMIT {
            tori_checks(rec, &prefix, &g.case, &mut rng, 1, cache, false);
        } else {
            let h = compute_h(&g.case);
            rec.check(format!("{prefix}.iso"), "h(a) + h(b) - h(ab) = alpha(a, b) - beta(a, b)", json!({ "index": i }), || {
                let h = h.as_ref().map_err(err)?;
                let r = verify_iso(&g.case, h);
                let first = r.failures().next().map(|p| json!({ "a": p.a, "b": p.b, "lhs": qz_string(&p.lhs), "rhs": qz_string(&p.rhs) }));
                Ok(Outcome::new(r.holds(), json!({ "pairs": r.pairs.len(), "first_failure": first })))
            });
        }
    }
}
