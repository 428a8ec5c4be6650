//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line straight to
//! stdout (bypassing the test harness capture) and the tests hold a shared
//! lock so their wall times do not overlap.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use nullcert::encoders::*;
use nullcert::enumcert::*;
use nullcert::graphs::{small_graphs, Graph};
use nullcert::linsolve::{rref, solve_particular, SolveStatus, SparseRationalMatrix};
use nullcert::nulla::*;
use nullcert::oracles::{self, elements, OracleLimits, StructureFamily};
use nullcert::poly::{Monomial, Polynomial, Rational, VarId};
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(
    id: &str,
    title: &str,
    ok: bool,
    elapsed: Duration,
    limit: Duration,
    detail: &str,
) -> bool {
    let pass = ok && elapsed < limit;
    let line = format!(
        "\n{} criterion {id}: {title} [{:.2}s, limit {}s] {detail}\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    pass
}

fn lim() -> OracleLimits {
    OracleLimits::default()
}

fn family(s: &PolySystem) -> StructureFamily {
    oracles::enumerate(&s.structure_kind(), &s.graph, &lim()).unwrap()
}

fn member_monomial(s: &PolySystem, member: u64) -> Monomial {
    Monomial::product_of(elements(member).into_iter().map(|j| s.indicator_ids[j]))
}

fn independence_number(g: &Graph) -> usize {
    oracles::max_structure_size(&oracles::enum_independent_sets(g, &lim()).unwrap()).unwrap()
}

#[test]
fn c1_bipartite_degree_zero() {
    let _guard = serial();
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for g in small_graphs(5).into_iter().filter(Graph::is_connected) {
        count += 1;
        let s = encode_perfect_matching_v1(&g);
        let run = nulla_solve(&s, 0).unwrap();
        let unequal = g
            .bipartition()
            .map(|b| b.class_a.len().abs_diff(b.class_b.len()))
            .filter(|&d| d > 0);
        match (unequal, run.outcome.certificate()) {
            (None, None) => {}
            (Some(diff), Some(c)) => {
                let mag = Rational::new(1.into(), (diff as i64).into());
                let vertex_ok = (0..g.n()).all(|i| {
                    let b = &c.betas[i];
                    b.degree() == Some(0) && b.constant_term().abs() == mag
                });
                let rest_zero = c.betas[g.n()..].iter().all(Polynomial::is_zero);
                if c.degree != 0 || !vertex_ok || !rest_zero {
                    failures.push(format!("{:?}: wrong coefficients", g.edges()));
                }
            }
            (u, c) => failures.push(format!(
                "{:?}: unequal classes {u:?}, certificate {}",
                g.edges(),
                c.is_some()
            )),
        }
    }
    let detail = format!(
        "{count} connected graphs, {} mismatches {:?}",
        failures.len(),
        failures
    );
    let pass = report(
        "1",
        "matching-v1 degree 0 iff bipartite with unequal classes",
        failures.is_empty(),
        t.elapsed(),
        Duration::from_secs(10),
        &detail,
    );
    assert!(pass, "{detail}");
}

#[test]
fn c2_independent_set_degree() {
    let _guard = serial();
    let t = Instant::now();
    let mut failures = Vec::new();
    let graphs = small_graphs(5);
    for g in &graphs {
        let alpha = independence_number(g);
        let s = encode_independent_set(g, alpha + 1);
        let run = nulla_solve(&s, default_degree_bound(&s, &lim())).unwrap();
        let got = run.outcome.certificate().map(|c| c.degree);
        if got != Some(alpha as u32) {
            failures.push(format!("{:?}: alpha {alpha}, got {got:?}", g.edges()));
        }
    }
    let detail = format!(
        "{} graphs, {} mismatches {:?}",
        graphs.len(),
        failures.len(),
        failures
    );
    let pass = report(
        "2",
        "independent-set certificate degree equals alpha at m = alpha + 1",
        failures.is_empty(),
        t.elapsed(),
        Duration::from_secs(60),
        &detail,
    );
    assert!(pass, "{detail}");
}

/// The system of `problem` on `g` whose required size is one more than the
/// largest structure, if such an `m` exists.
fn just_infeasible(problem: &Problem, g: &Graph) -> Option<PolySystem> {
    let probe = encode(problem, g, 0).ok()?;
    let fam = family(&probe);
    let max = oracles::max_structure_size(&fam).ok()?;
    let ground = probe.indicator_ids.len().max(g.n());
    (0..=ground + 1)
        .filter_map(|m| encode(problem, g, m).ok())
        .find(|s| s.required_size() == Some(max + 1))
}

#[test]
fn c3_enumerative_support() {
    let _guard = serial();
    let t = Instant::now();
    let problems = [
        Problem::IndependentSet,
        Problem::VertexCover {
            form: CoverForm::Subset,
        },
        Problem::EdgeCover {
            form: CoverForm::Subset,
        },
        Problem::KColorable { k: 2 },
        Problem::Homomorphism {
            target: Graph::complete(2),
        },
    ];
    let opts = NullaOptions::default();
    let mut failures = Vec::new();
    let (mut checked, mut skipped) = (0, 0);
    for p in &problems {
        for g in small_graphs(5) {
            let Some(s) = just_infeasible(p, &g) else {
                // no members (edge covers with an isolated vertex) or no
                // representable size (vertex covers of an edgeless graph)
                skipped += 1;
                continue;
            };
            checked += 1;
            let fam = family(&s);
            let basis = structure_monomial_basis(&s, &lim()).unwrap();
            let beta1 = match invert_cardinality_form(&s, &basis) {
                Ok(b) => b,
                Err(e) => {
                    failures.push(format!("{} {:?}: {e}", p.name(), g.edges()));
                    continue;
                }
            };
            let expected: BTreeSet<Monomial> =
                fam.members().map(|b| member_monomial(&s, b)).collect();
            let support: BTreeSet<Monomial> = beta1.monomials().cloned().collect();
            if support != expected {
                failures.push(format!("{} {:?}: support differs", p.name(), g.edges()));
            }
            if CommonSign::of(&beta1) == CommonSign::Mixed {
                failures.push(format!("{} {:?}: mixed signs", p.name(), g.edges()));
            }
            let bound = default_completion_bound(&s, &beta1);
            match complete_certificate(&s, &beta1, bound, &opts) {
                Ok(c) if verify_certificate(&s, &c).unwrap().ok => {}
                Ok(_) => failures.push(format!("{} {:?}: completion fails", p.name(), g.edges())),
                Err(e) => failures.push(format!("{} {:?}: {e}", p.name(), g.edges())),
            }
        }
    }
    let detail = format!(
        "{checked} systems ({skipped} without an infeasible size), {} failures {:?}",
        failures.len(),
        failures
    );
    let pass = report(
        "3",
        "support of beta_1 equals the structure family, one sign, completion verifies",
        failures.is_empty(),
        t.elapsed(),
        Duration::from_secs(300),
        &detail,
    );
    assert!(pass, "{detail}");
}

fn odd_clique(n: usize, expected: u32) -> Result<(), String> {
    let s = encode_perfect_matching_v1(&Graph::complete(n));
    let run = nulla_solve(&s, default_degree_bound(&s, &lim())).map_err(|e| e.to_string())?;
    let c = run
        .outcome
        .certificate()
        .ok_or_else(|| format!("K{n}: {}", run.outcome.label()))?;
    if c.degree != expected {
        return Err(format!("K{n}: degree {} instead of {expected}", c.degree));
    }
    if solve_at_degree(&s, expected - 1)
        .map_err(|e| e.to_string())?
        .is_some()
    {
        return Err(format!("K{n}: degree {} also solvable", expected - 1));
    }
    Ok(())
}

#[test]
fn c4_odd_cliques() {
    let _guard = serial();
    let t = Instant::now();
    let res: Vec<_> = [(3, 1), (5, 2)]
        .iter()
        .map(|&(n, d)| odd_clique(n, d))
        .collect();
    let errors: Vec<String> = res.into_iter().filter_map(Result::err).collect();
    let detail = format!("K3 -> 1, K5 -> 2, one degree lower infeasible; errors {errors:?}");
    let pass = report(
        "4",
        "matching-v1 minimal degree on odd cliques",
        errors.is_empty(),
        t.elapsed(),
        Duration::from_secs(60),
        &detail,
    );
    assert!(pass, "{detail}");
}

#[test]
#[ignore = "extended check, runs for many minutes"]
fn c4_extended_k7() {
    let _guard = serial();
    let t = Instant::now();
    let res = odd_clique(7, 3);
    let pass = report(
        "4 (K7)",
        "matching-v1 minimal degree 3 on K7",
        res.is_ok(),
        t.elapsed(),
        Duration::from_secs(1800),
        &format!("{res:?}"),
    );
    assert!(pass);
}

fn check_transform(g: &Graph) -> Result<String, String> {
    let v1 = encode_perfect_matching_v1(g);
    let v2 = encode_perfect_matching_v2(g).map_err(|e| e.to_string())?;
    let (_, _, c2) = enumerative_certificate(&v2, &lim(), &NullaOptions::default())
        .map_err(|e| e.to_string())?;
    let c1 = matching_transform(&c2, g).map_err(|e| e.to_string())?;
    if !verify_certificate(&v1, &c1).map_err(|e| e.to_string())?.ok {
        return Err("transformed certificate does not verify".into());
    }
    let matchings = oracles::enum_matchings(g, &lim()).map_err(|e| e.to_string())?;
    let nu = oracles::max_structure_size(&matchings).map_err(|e| e.to_string())? as u32;
    let deltas = &c1.betas[..g.n()];
    let thetas = &c1.betas[g.n()..];
    for (i, d) in deltas.iter().enumerate() {
        if d.degree() != Some(nu) {
            return Err(format!(
                "deg Delta_{} = {:?}, max matching {nu}",
                i + 1,
                d.degree()
            ));
        }
        for m in matchings.members() {
            if d.coefficient(&member_monomial(&v1, m)).is_zero() {
                return Err(format!("Delta_{} misses a matching monomial", i + 1));
            }
        }
    }
    let theta_deg = thetas.iter().filter_map(Polynomial::degree).max();
    if theta_deg.is_some_and(|t| t > nu) {
        return Err(format!("deg Theta {theta_deg:?} exceeds deg Delta {nu}"));
    }
    Ok(format!("max matching {nu}, deg Theta {theta_deg:?}"))
}

#[test]
fn c5_matching_transform() {
    let _guard = serial();
    let t = Instant::now();
    let pendant_pair = Graph::new(6, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (1, 6)]).unwrap();
    let results = [
        ("K1,3", check_transform(&Graph::star(3))),
        (
            "C4 with two pendants at one vertex",
            check_transform(&pendant_pair),
        ),
    ];
    let ok = results.iter().all(|(_, r)| r.is_ok());
    let detail = format!("{results:?}");
    let pass = report(
        "5",
        "line-graph certificate transformed to the linear matching system",
        ok,
        t.elapsed(),
        Duration::from_secs(60),
        &detail,
    );
    assert!(pass, "{detail}");
}

#[test]
fn c6_vertex_cover_duality() {
    let _guard = serial();
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for g in small_graphs(5) {
        let alpha = independence_number(&g);
        if alpha == g.n() {
            // edgeless: every vertex set of any size is a cover
            continue;
        }
        count += 1;
        let m = g.n() - alpha - 1;
        let orig = encode_vertex_cover(&g, m, CoverForm::Original).unwrap();
        let sub = encode_vertex_cover(&g, m, CoverForm::Subset).unwrap();
        let run = nulla_solve(&orig, default_degree_bound(&orig, &lim())).unwrap();
        let got = run.outcome.certificate().map(|c| c.degree);
        if got != Some(alpha as u32) {
            failures.push(format!(
                "{:?}: original form degree {got:?}, alpha {alpha}",
                g.edges()
            ));
        }
        let run = nulla_solve(&sub, default_degree_bound(&sub, &lim())).unwrap();
        let Some(c) = run.outcome.certificate() else {
            failures.push(format!("{:?}: subset form uncertified", g.edges()));
            continue;
        };
        let map: AffineMap = sub
            .indicator_ids
            .iter()
            .map(|&v| (v, &Polynomial::one() - &Polynomial::var(v)))
            .collect();
        let moved = change_of_variables(c, &map).unwrap();
        let transformed = transform_polys(&sub.polys, &map);
        match align_to_system(&moved, &transformed, &orig) {
            Ok(a) if a.degree == c.degree && verify_certificate(&orig, &a).unwrap().ok => {}
            Ok(a) => failures.push(format!(
                "{:?}: moved certificate degree {} vs {}, or fails to verify",
                g.edges(),
                a.degree,
                c.degree
            )),
            Err(e) => failures.push(format!("{:?}: {e}", g.edges())),
        }
    }
    let detail = format!(
        "{count} graphs with an edge, {} failures {:?}",
        failures.len(),
        failures
    );
    let pass = report(
        "6",
        "vertex-cover certificate degree equals alpha; subset-to-original change of variables",
        failures.is_empty(),
        t.elapsed(),
        Duration::from_secs(120),
        &detail,
    );
    assert!(pass, "{detail}");
}

struct Instance {
    label: String,
    system: PolySystem,
    feasible: bool,
    bound: u32,
    cost: usize,
}

fn soundness_instances() -> Vec<Instance> {
    let problems = [
        Problem::IndependentSet,
        Problem::KColorable { k: 2 },
        Problem::KColorable { k: 3 },
        Problem::EdgeChromatic,
        Problem::Homomorphism {
            target: Graph::complete(2),
        },
        Problem::Homomorphism {
            target: Graph::complete(3),
        },
        Problem::RegularSpanning { all_pairs: false },
        Problem::RegularSpanning { all_pairs: true },
        Problem::KRegular { k: 1 },
        Problem::KRegular { k: 2 },
        Problem::VertexCover {
            form: CoverForm::Subset,
        },
        Problem::VertexCover {
            form: CoverForm::Original,
        },
        Problem::EdgeCover {
            form: CoverForm::Subset,
        },
        Problem::EdgeCover {
            form: CoverForm::Original,
        },
        Problem::PerfectMatchingV1,
        Problem::PerfectMatchingV2,
    ];
    let mut out = Vec::new();
    for p in &problems {
        for g in small_graphs(5) {
            let sizes: Vec<usize> = match p {
                Problem::PerfectMatchingV1 | Problem::PerfectMatchingV2 => vec![0],
                Problem::VertexCover { .. } => (0..=g.n()).collect(),
                Problem::EdgeCover { .. }
                | Problem::RegularSpanning { .. }
                | Problem::KRegular { .. } => (0..=g.edge_count()).collect(),
                _ => {
                    let probe = encode(p, &g, 0).unwrap();
                    let max = oracles::max_structure_size(&family(&probe)).unwrap();
                    (0..=max + 1).collect()
                }
            };
            for m in sizes {
                // odd orders have no line-graph matching system
                let Ok(s) = encode(p, &g, m) else { continue };
                let feasible = s.feasible_in(&family(&s));
                let bound = default_degree_bound(&s, &lim());
                let cost = column_count(&s, bound);
                out.push(Instance {
                    label: format!("{} {:?} n={} m={m}", p.name(), g.edges(), g.n()),
                    system: s,
                    feasible,
                    bound,
                    cost,
                });
            }
        }
    }
    out.sort_by_key(|i| i.cost);
    out
}

#[test]
fn c7_feasibility_soundness() {
    let _guard = serial();
    let t = Instant::now();
    let limit = Duration::from_secs(600);
    let instances = soundness_instances();
    let total = instances.len();
    let (mut agree, mut done) = (0, 0);
    let mut unsound = Vec::new();
    let mut missed = Vec::new();
    for inst in &instances {
        if t.elapsed() >= limit {
            break;
        }
        done += 1;
        let run = nulla_solve(&inst.system, inst.bound).unwrap();
        match (inst.feasible, &run.outcome) {
            (true, NullaOutcome::Certified(_)) => unsound.push(inst.label.clone()),
            (true, _) | (false, NullaOutcome::Certified(_)) => agree += 1,
            (false, o) => missed.push(format!("{} ({})", inst.label, o.label())),
        }
    }
    let detail = format!(
        "{done} of {total} instances run, {agree} agree with the oracle, \
         {} infeasible left uncertified {:?}, {} feasible certified {:?}",
        missed.len(),
        missed,
        unsound.len(),
        unsound
    );
    let ok = done == total && missed.is_empty() && unsound.is_empty();
    report(
        "7",
        "certificate found iff the oracle finds no structure of the size",
        ok,
        t.elapsed(),
        limit,
        &detail,
    );
    // A certificate for a feasible system would be a soundness bug. Infeasible
    // systems whose certificate needs more columns than the default cap, and
    // running out of wall time, are reported above but do not abort the run.
    assert!(unsound.is_empty(), "{detail}");
}

const VARS: usize = 3;
const SIDE: usize = 9;

/// Coefficients indexed by the exponent triple; enough room for squares of
/// polynomials with per-variable exponents up to 2 and their products.
type Dense = Vec<Rational>;

fn to_dense(p: &Polynomial) -> Dense {
    let mut d = vec![Rational::zero(); SIDE.pow(VARS as u32)];
    for (m, c) in p.terms() {
        let idx = (0..VARS).fold(0, |acc, v| {
            acc * SIDE + m.exponent(VarId(v as u32)) as usize
        });
        d[idx] += c;
    }
    d
}

fn exps(idx: usize) -> [usize; VARS] {
    let mut e = [0; VARS];
    let mut r = idx;
    for v in (0..VARS).rev() {
        e[v] = r % SIDE;
        r /= SIDE;
    }
    e
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![Rational::zero(); a.len()];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            let (ei, ej) = (exps(i), exps(j));
            let idx = (0..VARS).fold(0, |acc, v| acc * SIDE + ei[v] + ej[v]);
            out[idx] += x * y;
        }
    }
    out
}

fn random_rational(rng: &mut StdRng) -> Rational {
    Rational::new(
        rng.random_range(-6i64..=6).into(),
        rng.random_range(1i64..=4).into(),
    )
}

fn random_poly(rng: &mut StdRng) -> Polynomial {
    let terms = rng.random_range(0..=4);
    Polynomial::from_terms((0..terms).map(|_| {
        let m =
            Monomial::from_exponents((0..VARS).map(|v| (VarId(v as u32), rng.random_range(0..=2))));
        (m, random_rational(rng))
    }))
}

fn polynomial_identity(rng: &mut StdRng) -> bool {
    let (p, q, r) = (random_poly(rng), random_poly(rng), random_poly(rng));
    let (dp, dq, dr) = (to_dense(&p), to_dense(&q), to_dense(&r));
    let add = |a: &Dense, b: &Dense| -> Dense { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    match rng.random_range(0..5) {
        0 => to_dense(&(&p * &q)) == dense_mul(&dp, &dq),
        1 => to_dense(&(&p + &q)) == add(&dp, &dq),
        2 => to_dense(&(&p - &q)) == dp.iter().zip(&dq).map(|(x, y)| x - y).collect::<Dense>(),
        3 => to_dense(&(&p * &(&q + &r))) == dense_mul(&dp, &add(&dq, &dr)),
        _ => to_dense(&p.pow(2)) == dense_mul(&dp, &dp),
    }
}

/// Gauss-Jordan on dense rows with the leftmost available pivot: pivot
/// columns, and the free-variables-zero solution when consistent.
fn dense_solve(a: &[Vec<Rational>], b: &[Rational]) -> (Vec<usize>, Option<Vec<Rational>>) {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        let Some(k) = (next..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(next, k);
        let lead = rows[next][c].clone();
        for v in rows[next].iter_mut() {
            *v /= &lead;
        }
        let pivot = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    if rows[next..].iter().any(|r| !r[cols].is_zero()) {
        return (pivots, None);
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][cols].clone();
    }
    (pivots, Some(x))
}

fn linear_system(rng: &mut StdRng) -> bool {
    let (n_rows, n_cols) = (rng.random_range(1..=6), rng.random_range(1..=6));
    let mut a: Vec<Vec<Rational>> = (0..n_rows)
        .map(|_| {
            (0..n_cols)
                .map(|_| {
                    if rng.random_bool(0.4) {
                        Rational::zero()
                    } else {
                        random_rational(rng)
                    }
                })
                .collect()
        })
        .collect();
    let mut b: Vec<Rational> = (0..n_rows).map(|_| random_rational(rng)).collect();
    if n_rows > 1 && rng.random_bool(0.5) {
        // a dependent row, consistent or not
        let f = random_rational(rng);
        let dep: Vec<Rational> = a[0].iter().map(|v| v * &f).collect();
        let last = n_rows - 1;
        a[last] = dep;
        b[last] = if rng.random_bool(0.5) {
            &b[0] * &f
        } else {
            random_rational(rng)
        };
    }
    let m = SparseRationalMatrix::from_dense(&a, &b).unwrap();
    let (pivots, x) = dense_solve(&a, &b);
    let got = solve_particular(&m);
    let r = rref(&m);
    let solved_ok = match (&x, &got.status) {
        (Some(x), SolveStatus::Solved) => {
            got.solution.as_ref() == Some(x) && got.pivot_columns == pivots
        }
        (None, SolveStatus::Infeasible { .. }) => true,
        _ => false,
    };
    solved_ok
        && r.pivot_columns == pivots
        && r.rank == pivots.len()
        && r.inconsistent_row.is_some() == x.is_none()
}

#[test]
fn c8_exactness() {
    let _guard = serial();
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x6e75_6c6c);
    let poly_bad = (0..10_000)
        .filter(|_| !polynomial_identity(&mut rng))
        .count();
    let lin_bad = (0..1_000).filter(|_| !linear_system(&mut rng)).count();
    let detail = format!(
        "10000 polynomial identities ({poly_bad} wrong), 1000 linear systems ({lin_bad} wrong)"
    );
    let pass = report(
        "8",
        "exact arithmetic against dense oracles",
        poly_bad == 0 && lin_bad == 0,
        t.elapsed(),
        Duration::from_secs(60),
        &detail,
    );
    assert!(pass, "{detail}");
}
