use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use freeplanar::freeprod::{
    basis_labels, boolean_decomposition_dims, concrete_span_rank, free_product_dims, DimensionProfile, LabelSource,
};
use freeplanar::gpa::{
    evaluate, gram, loop_basis, multiply, trace, AlgebraSpec, Caps, LoopVector, Side,
};
use freeplanar::moments::{
    boolean_conv_check, cumulants_from_moments, perm_group_character_moments, CumulantKind, MomentProfile,
};
use freeplanar::numeric::{int, is_positive_semidefinite, Rational, Surd};
use freeplanar::partitions::{
    enumerate, enveloping_blocks, even_slot, kreweras, kreweras_inverse, merge_blocks, nested_kreweras, odd_slot,
    parity_map, split_block, ParityMap, PartialPartition, Partition, PartitionClass,
};
use freeplanar::tangles::{free_compose, interleave, is_free_pair, parse, reduced_pair, t_pi, TangleExpr};

use crate::commands::load_spec;
use crate::output::{CliError, Output};
use crate::Global;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Partitions,
    Kreweras,
    Tangles,
    Gpa,
    Freeprod,
}

struct Check {
    suite: &'static str,
    name: String,
    cases: usize,
    counterexample: Option<String>,
}

struct Runner {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Runner {
    /// Runs `f` over `cases` in order and keeps the first failure, so cases must be
    /// listed smallest first.
    fn check<T>(&mut self, name: impl Into<String>, cases: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Result<(), String>) {
        let mut count = 0;
        let mut counterexample = None;
        for case in cases {
            count += 1;
            if let Err(e) = f(case) {
                counterexample = Some(e);
                break;
            }
        }
        self.checks.push(Check { suite: self.suite, name: name.into(), cases: count, counterexample });
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn nc(n: usize) -> Vec<Partition> {
    enumerate(n, PartitionClass::NonCrossing).expect("within the enumeration cap")
}

fn upto(lo: usize, hi: usize) -> impl Iterator<Item = usize> {
    lo..=hi
}

pub fn run(suite: Suite, g: &Global) -> Result<Output, CliError> {
    let n = g.max_n as usize;
    let mut checks = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Partitions) {
        checks.extend(partitions(n));
    }
    if wants(Suite::Kreweras) {
        checks.extend(kreweras_suite(n, g.seed));
    }
    if wants(Suite::Tangles) {
        checks.extend(tangles(n));
    }
    if wants(Suite::Gpa) {
        let specs = if g.spec.is_empty() {
            [vec![1, 1], vec![1, 2], vec![2], vec![1, 1, 1, 1]]
                .into_iter()
                .map(|b| AlgebraSpec::new(format!("{b:?}"), b).expect("valid blocks"))
                .collect()
        } else {
            (0..g.spec.len()).map(|i| load_spec(g, i)).collect::<Result<Vec<_>, _>>()?
        };
        checks.extend(gpa(n, &specs));
    }
    if wants(Suite::Freeprod) {
        checks.extend(freeprod(n));
    }
    let ok = checks.iter().all(|c| c.counterexample.is_none());
    let mut lines = vec![format!("seed {} max-n {}", g.seed, n)];
    for c in &checks {
        match &c.counterexample {
            None => lines.push(format!("PASS {}/{} ({} cases)", c.suite, c.name, c.cases)),
            Some(e) => lines.push(format!("FAIL {}/{} after {} cases: {e}", c.suite, c.name, c.cases)),
        }
    }
    let failed = checks.iter().filter(|c| c.counterexample.is_some()).count();
    lines.push(format!("{} checks, {failed} failed", checks.len()));
    let json_checks: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "suite": c.suite,
                "name": c.name,
                "cases": c.cases,
                "passed": c.counterexample.is_none(),
                "counterexample": c.counterexample,
            })
        })
        .collect();
    let out = Output::new(json!({ "seed": g.seed, "max_n": n, "passed": ok, "checks": json_checks }), lines.join("\n"));
    Ok(if ok { out } else { out.failed() })
}

fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 1..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    *row.last().unwrap()
}

fn partitions(n: usize) -> Vec<Check> {
    let mut r = Runner { suite: "partitions", checks: Vec::new() };
    r.check("class counts", upto(1, n.min(8)), |k| {
        let counts = [
            (PartitionClass::All, bell(k)),
            (PartitionClass::NonCrossing, catalan(k)),
            (PartitionClass::Interval, 1 << (k - 1)),
        ];
        for (class, expected) in counts {
            let got = enumerate(k, class).map_err(err)?.len();
            if got != expected {
                return Err(format!("n = {k}, {class:?}: {got} partitions, expected {expected}"));
            }
        }
        Ok(())
    });
    r.check("text round trip", upto(1, n.min(7)).flat_map(|k| enumerate(k, PartitionClass::All).unwrap()), |p| {
        match p.to_string().parse::<Partition>() {
            Ok(q) if q == p => Ok(()),
            _ => Err(format!("{p}")),
        }
    });
    let pairs = upto(1, n.min(5)).flat_map(|k| {
        let parts = nc(k);
        parts.iter().flat_map(|a| parts.iter().map(move |b| (a.clone(), b.clone()))).collect::<Vec<_>>()
    });
    r.check("order agrees with meet and join", pairs, |(a, b)| {
        let le = a.leq(&b).map_err(err)?;
        let by_meet = a.meet(&b).map_err(err)? == a;
        let by_join = a.join(&b).map_err(err)? == b;
        if le == by_meet && le == by_join {
            Ok(())
        } else {
            Err(format!("p = {a}, q = {b}"))
        }
    });
    let splits = upto(2, n.min(6)).flat_map(nc).flat_map(|p| {
        p.blocks()
            .iter()
            .flat_map(|b| (1..b.len()).map(move |i| (b.clone(), i)))
            .map(|(b, i)| (p.clone(), b, i))
            .collect::<Vec<_>>()
    });
    r.check("split then merge", splits, |(p, b, i)| {
        let split = split_block(&p, &b, i).map_err(err)?;
        match merge_blocks(&split, &b[..i], &b[i..]) {
            Ok(q) if q == p => Ok(()),
            _ => Err(format!("p = {p}, block {:?}, i = {i}", b)),
        }
    });
    r.checks
}

fn above_pi0(order: usize) -> Vec<Partition> {
    let floor = Partition::pi0(order);
    nc(order).into_iter().filter(|p| floor.leq(p).unwrap()).collect()
}

/// Moments of the fixed-point count of a random permutation group.
fn random_group_profile(rng: &mut ChaCha8Rng, len: usize) -> (String, MomentProfile) {
    let points = rng.gen_range(2..=6);
    let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2))
        .map(|_| {
            let mut perm: Vec<usize> = (1..=points).collect();
            perm.shuffle(rng);
            perm
        })
        .collect();
    let label = format!("group on {points} points generated by {gens:?}");
    (label, perm_group_character_moments(points, &gens, len).expect("small group"))
}

fn kreweras_suite(n: usize, seed: u64) -> Vec<Check> {
    let mut r = Runner { suite: "kreweras", checks: Vec::new() };
    r.check("block count and inverse", upto(1, n).flat_map(nc), |p| {
        let k = kreweras(&p).map_err(err)?;
        if p.block_count() + k.block_count() != p.order() + 1 {
            return Err(format!("p = {p}, K(p) = {k}: block counts"));
        }
        if kreweras_inverse(&k).map_err(err)? != p {
            return Err(format!("p = {p}: inverse of K(p) = {k}"));
        }
        Ok(())
    });
    r.check("nested complement absorbs the pairing", upto(1, n.min(5)).flat_map(|k| nc(2 * k)), |pi| {
        let joined = pi.join(&Partition::pi0(pi.order())).map_err(err)?;
        let (a, b) = (nested_kreweras(&pi).map_err(err)?, nested_kreweras(&joined).map_err(err)?);
        if a == b {
            Ok(())
        } else {
            Err(format!("pi = {pi}: {a} vs {b}"))
        }
    });
    r.check("parity maps", upto(1, n.min(5)).flat_map(|k| above_pi0(2 * k)), |pi| {
        let lhs = kreweras(&parity_map(&pi, ParityMap::F).map_err(err)?).map_err(err)?;
        let rhs = parity_map(&nested_kreweras(&pi).map_err(err)?, ParityMap::G).map_err(err)?;
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("pi = {pi}: K(F(pi)) = {lhs}, G(kr'(pi)) = {rhs}"))
        }
    });
    let surgeries = upto(2, n.min(7)).flat_map(nc).flat_map(|p| {
        p.blocks()
            .iter()
            .filter(|b| b.len() >= 2)
            .flat_map(|b| (1..b.len()).map(move |i| (b.clone(), i)))
            .map(|(b, i)| (p.clone(), b, i))
            .collect::<Vec<_>>()
    });
    r.check("surgery (split after i pairs with the i-th lower envelope)", surgeries, |(p, b, i)| {
        let k = kreweras(&p).map_err(err)?;
        let env = enveloping_blocks(&p, &b).map_err(err)?;
        let lower = env.lower.get(i - 1).ok_or_else(|| format!("p = {p}, block {b:?}: no lower block {i}"))?;
        let merged = merge_blocks(&k, &env.upper, lower).map_err(|e| format!("p = {p}, block {b:?}, i = {i}: {e}"))?;
        let split = kreweras(&split_block(&p, &b, i).map_err(err)?).map_err(err)?;
        if split == merged {
            Ok(())
        } else {
            Err(format!("p = {p}, block {b:?}, i = {i}: {split} vs {merged}"))
        }
    });
    let len = (n + 3).min(8);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let profiles: Vec<_> = (0..20).map(|_| (random_group_profile(&mut rng, len), random_group_profile(&mut rng, len))).collect();
    r.check(format!("boolean cumulants of products (n = {len})"), profiles, |((la, a), (lb, b))| {
        let check = boolean_conv_check(&a, &b, len).map_err(err)?;
        if check.equal {
            Ok(())
        } else {
            Err(format!("{la} and {lb}"))
        }
    });
    r.checks
}

fn tangles(n: usize) -> Vec<Check> {
    let mut r = Runner { suite: "tangles", checks: Vec::new() };
    let even = |k: usize| enumerate(2 * k, PartitionClass::EvenNonCrossing).expect("small order");
    r.check("partition of T_pi", upto(1, n.min(5)).flat_map(even), |pi| {
        let t = t_pi(&pi).map_err(err)?;
        match t.pi() {
            Ok(q) if q == pi => Ok(()),
            other => Err(format!("pi = {pi}: read back {other:?}")),
        }
    });
    r.check("shaded regions", upto(1, n.min(5)).flat_map(even), |pi| {
        let shading = t_pi(&pi).map_err(err)?.shading_partition().map_err(err)?;
        let kr = nested_kreweras(&pi).map_err(err)?;
        if shading == kr {
            Ok(())
        } else {
            Err(format!("pi = {pi}: shading {shading}, kr' {kr}"))
        }
    });
    let pairs = upto(1, n.min(4)).flat_map(|k| {
        let parts = even(k);
        parts.iter().flat_map(|a| parts.iter().map(move |b| (a.clone(), b.clone()))).collect::<Vec<_>>()
    });
    r.check("free criterion matches planarity", pairs, |(a, b)| {
        let (ta, tb) = (t_pi(&a).map_err(err)?, t_pi(&b).map_err(err)?);
        let free = is_free_pair(&ta, &tb).map_err(err)?;
        let planar = interleave(&ta, &tb).is_ok();
        let below = b.leq(&nested_kreweras(&a).map_err(err)?).map_err(err)?;
        if free == planar && free == below {
            Ok(())
        } else {
            Err(format!("({a}, {b}): criterion {free}, planar {planar}, below kr' {below}"))
        }
    });
    r.check("free composition joins the parity parts", upto(1, n.min(4)).flat_map(|k| above_pi0(2 * k)).filter(|p| p.is_even()), |pi| {
        let (t, t2) = reduced_pair(&pi).map_err(err)?;
        let joint = free_compose(&t, &t2).map_err(err)?.pi().map_err(err)?;
        let m = 2 * pi.order();
        let odds: Vec<usize> = (1..=pi.order()).map(odd_slot).collect();
        let evens: Vec<usize> = (1..=pi.order()).map(even_slot).collect();
        let expected = PartialPartition::embed(m, &odds, &pi)
            .union_with(&PartialPartition::embed(m, &evens, &nested_kreweras(&pi).map_err(err)?))
            .map_err(err)?;
        if joint == expected {
            Ok(())
        } else {
            Err(format!("pi = {pi}: {joint} vs {expected}"))
        }
    });
    let exprs = ["S 2", "U 3", "M(1,2)", "Mult 2", "Unit", "TrL 2", "TrR 1", "E(3,2)", "Rot 3", "Id 2", "One 2",
        "compose(Mult 2, 1, Rot 2)", "free(U 2, Id 2)", "inv(Tpi[{1,4},{2,3}])"];
    r.check("expression round trip", exprs, |text| {
        let e = parse(text).map_err(|e| format!("{text}: {e}"))?;
        match parse(&e.to_string()) {
            Ok(f) if f == e => Ok(()),
            _ => Err(format!("{text} prints as {e}")),
        }
    });
    r.checks
}

fn q(n: i64, d: i64) -> Surd {
    Surd::from_rational(Rational::new(n.into(), d.into()))
}

fn basis_vectors(spec: &AlgebraSpec, k: usize) -> Result<Vec<LoopVector>, String> {
    Ok(loop_basis(spec, k, Caps::default()).map_err(err)?.into_iter().map(LoopVector::basis).collect())
}

fn gpa(n: usize, specs: &[AlgebraSpec]) -> Vec<Check> {
    let mut r = Runner { suite: "gpa", checks: Vec::new() };
    let top = n.min(3);
    for spec in specs {
        let name = format!("{:?}", spec.blocks);
        let d = spec.dimension();
        r.check(format!("{name} loop count is d^n"), upto(1, top), |k| {
            let got = basis_vectors(spec, k)?.len() as u64;
            if got == d.pow(k as u32) {
                Ok(())
            } else {
                Err(format!("n = {k}: {got} loops"))
            }
        });
        r.check(format!("{name} spin vector"), [()], |_| {
            if spec.spin_is_perron_vector() {
                Ok(())
            } else {
                Err(name.clone())
            }
        });
        let units = basis_vectors(spec, 1).unwrap_or_default();
        let unit_pairs: Vec<(LoopVector, LoopVector)> =
            units.iter().flat_map(|a| units.iter().map(move |b| (a.clone(), b.clone()))).collect();
        r.check(format!("{name} degree 1 is the matrix algebra"), unit_pairs, |(x, y)| {
            let (a, b) = (x.terms().next().unwrap().0.clone(), y.terms().next().unwrap().0.clone());
            let product = multiply(spec, &x, &y).map_err(err)?;
            let expected = if a.0[1] == b.0[0] {
                LoopVector::basis(freeplanar::gpa::Loop(vec![a.0[0], b.0[1]]))
            } else {
                LoopVector::zero(1)
            };
            if product == expected {
                Ok(())
            } else {
                Err(format!("{a} times {b} = {product}"))
            }
        });
        r.check(format!("{name} Markov trace"), units.clone(), |x| {
            let l = x.terms().next().unwrap().0.clone();
            let (e0, e1) = (l.0[0], l.0[1]);
            let expected = if e0 == e1 { q(spec.blocks[e0.0 - 1] as i64, d as i64) } else { Surd::zero() };
            let got = trace(spec, &x, Side::Right).map_err(err)?;
            if got == expected {
                Ok(())
            } else {
                Err(format!("tr({l}) = {got}, expected {expected}"))
            }
        });
        r.check(format!("{name} Temperley-Lieb relations"), upto(2, top), |k| {
            let e: Vec<LoopVector> =
                (1..k).map(|i| evaluate(spec, &TangleExpr::E(k, i), &[])).collect::<Result<_, _>>().map_err(err)?;
            for i in 0..k - 1 {
                if multiply(spec, &e[i], &e[i]).map_err(err)? != e[i] {
                    return Err(format!("e{} is not idempotent in degree {k}", i + 1));
                }
                if i + 1 < k - 1 {
                    let w = multiply(spec, &multiply(spec, &e[i], &e[i + 1]).map_err(err)?, &e[i]).map_err(err)?;
                    if w != e[i].scale(&q(1, d as i64)) {
                        return Err(format!("e{0} e{1} e{0} in degree {k}", i + 1, i + 2));
                    }
                }
            }
            Ok(())
        });
        let spherical = upto(1, top).flat_map(|k| basis_vectors(spec, k).unwrap_or_default());
        r.check(format!("{name} left and right traces agree"), spherical, |x| {
            let (a, b) = (trace(spec, &x, Side::Left).map_err(err)?, trace(spec, &x, Side::Right).map_err(err)?);
            if a == b {
                Ok(())
            } else {
                Err(format!("{x}: {a} vs {b}"))
            }
        });
        r.check(format!("{name} Gram matrix is positive semidefinite"), upto(1, top.min(2)), |k| {
            let m = gram(spec, &basis_vectors(spec, k)?).map_err(err)?;
            if is_positive_semidefinite(&spec.field(), &m).map_err(err)? {
                Ok(())
            } else {
                Err(format!("degree {k}"))
            }
        });
    }
    r.checks
}

fn fuss_catalan(n: usize) -> Rational {
    let mut c = int(1);
    for i in 0..n {
        c = c * int((3 * n - i) as i64) / int(i as i64 + 1);
    }
    c / int(2 * n as i64 + 1)
}

fn freeprod(n: usize) -> Vec<Check> {
    let mut r = Runner { suite: "freeprod", checks: Vec::new() };
    let len = n.min(6);
    let tlj = DimensionProfile::tlj(len);
    r.check("Fuss-Catalan dimensions", upto(1, len), |k| {
        let got = free_product_dims(&tlj, &tlj, k).map_err(err)?;
        if got[k - 1] == fuss_catalan(k) {
            Ok(())
        } else {
            Err(format!("n = {k}: {}", got[k - 1]))
        }
    });
    let s3 = perm_group_character_moments(3, &[vec![2, 1, 3], vec![2, 3, 1]], len).expect("small group");
    let profiles = [
        ("TLJ", tlj.clone()),
        ("point mass 4", DimensionProfile::point_mass(4, len)),
        ("S3", DimensionProfile::new(s3).expect("group profiles have nonnegative Boolean cumulants")),
    ];
    let pairs: Vec<_> = profiles.iter().flat_map(|a| profiles.iter().map(move |b| (a, b))).collect();
    r.check("decomposition bookkeeping", pairs, |((na, a), (nb, b))| {
        let free = free_product_dims(a, b, len).map_err(err)?;
        let dec = boolean_decomposition_dims(a, b, len).map_err(err)?;
        let boolean = cumulants_from_moments(&MomentProfile::new("pq", free.clone()), CumulantKind::Boolean).values;
        if boolean != dec.l {
            return Err(format!("({na}, {nb}): L dims {:?}", dec.l));
        }
        for k in 1..=len.min(5) {
            let mut from_intervals = int(0);
            for interval in enumerate(k, PartitionClass::Interval).map_err(err)? {
                from_intervals += interval.blocks().iter().map(|b| dec.l[b.len() - 1].clone()).product::<Rational>();
            }
            if from_intervals != free[k - 1] {
                return Err(format!("({na}, {nb}), n = {k}: interval sum {from_intervals}"));
            }
            let labels = basis_labels(a, b, k).map_err(err)?.len();
            if int(labels as i64) != free[k - 1] {
                return Err(format!("({na}, {nb}), n = {k}: {labels} labels"));
            }
        }
        Ok(())
    });
    let spec = AlgebraSpec::new("C4", vec![1, 1, 1, 1]).expect("valid blocks");
    r.check("concrete free product rank", upto(1, n.min(3)), |k| {
        let rank = concrete_span_rank(&spec, &spec, k, LabelSource::Tl, Caps::default()).map_err(err)?;
        if int(rank as i64) == fuss_catalan(k) {
            Ok(())
        } else {
            Err(format!("n = {k}: rank {rank}"))
        }
    });
    r.checks
}
