//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symlift::io;
use symlift_core::balanced::{coarsest_balanced_refinement, enumerate_balanced, is_balanced_combinatorial, is_balanced_matrix};
use symlift_core::dynamics::{
    admissible_field, energy_drift, flow_invariance_deviation, gradient_function_eval, integrate,
    is_gradient_numeric, is_hamiltonian_numeric, restrict_field, sample_points, scaling_check, AdmissibleCoupling,
    CouplingKind, CouplingSpec, FieldHandle,
};
use symlift_core::lift::{build_simple_symmetric_lift, build_symmetric_lift, symmetric_lift_k_vector, verify_lift};
use symlift_core::poly::Poly;
use symlift_core::quotient::{quotient, quotient_is_symmetric};
use symlift_core::{DiGraph, Partition};

const SEED: u64 = 20_240_917;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn graph(name: &str) -> DiGraph {
    io::read_graph(&fixture(&format!("{}.json", name))).unwrap()
}

fn partition(name: &str, n: usize) -> Partition {
    io::read_partition(&fixture(&format!("{}.json", name)), Some(n)).unwrap()
}

fn field(graph_name: &str, model: &str) -> FieldHandle {
    io::read_model(&fixture(&format!("{}.json", model))).unwrap().field(&graph(graph_name)).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

// ---- oracles, written from the definitions ----

fn all_labels(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max + 1 {
            cur[i] = l;
            rec(i + 1, max.max(l), cur, out);
        }
    }
    let mut out = Vec::new();
    rec(1, 0, &mut vec![0; n], &mut out);
    out
}

fn received(g: &DiGraph, labels: &[usize], v: usize, class: usize) -> u32 {
    (0..labels.len()).filter(|&w| labels[w] == class).map(|w| g.get(v, w)).sum()
}

fn oracle_balanced(g: &DiGraph, labels: &[usize]) -> bool {
    let n = labels.len();
    let m = labels.iter().max().unwrap() + 1;
    (0..n).all(|u| {
        (0..n).all(|v| labels[u] != labels[v] || (0..m).all(|c| received(g, labels, u, c) == received(g, labels, v, c)))
    })
}

fn oracle_quotient(g: &DiGraph, labels: &[usize]) -> Vec<Vec<u32>> {
    let m = labels.iter().max().unwrap() + 1;
    (0..m)
        .map(|i| {
            let rep = labels.iter().position(|&l| l == i).unwrap();
            (0..m).map(|j| received(g, labels, rep, j)).collect()
        })
        .collect()
}

fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    (0..fine.len()).all(|u| (0..fine.len()).all(|v| fine[u] != fine[v] || coarse[u] == coarse[v]))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_entry: u32) -> DiGraph {
    DiGraph::from_matrix(n, (0..n * n).map(|_| rng.gen_range(0..=max_entry)).collect()).unwrap()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn cubic_monomials(nvars: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=3 - used).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}

fn random_cubic(rng: &mut ChaCha8Rng, nvars: usize) -> Poly {
    Poly::new(nvars, cubic_monomials(nvars).into_iter().map(|e| (rng.gen_range(-2.0..=2.0), e)).collect()).unwrap()
}

// ---- criteria ----

fn c1_petersen_quotients() -> Outcome {
    let g = graph("petersen");
    let mut worst = Duration::ZERO;
    let mut ok = true;
    for (name, expect) in [
        ("petersen_bowtie", vec![vec![2, 1], vec![1, 2]]),
        ("petersen_bowtie2", vec![vec![0, 1, 2], vec![2, 1, 0], vec![2, 0, 1]]),
    ] {
        let p = partition(name, 10);
        let start = Instant::now();
        let q = quotient(&g, &p).unwrap();
        worst = worst.max(start.elapsed());
        ok &= q.quotient.rows() == expect;
    }
    Outcome::new(ok && worst < Duration::from_millis(1), format!("slowest {:?}", worst))
}

fn c2_balance_tests_agree() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    let (mut checked, mut discrepancies, mut oracle_misses) = (0usize, 0usize, 0usize);
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n, 3);
        for labels in all_labels(n) {
            let p = Partition::from_labels(&labels).unwrap();
            let comb = is_balanced_combinatorial(&g, &p).unwrap();
            let mat = is_balanced_matrix(&g, &p).unwrap();
            discrepancies += usize::from(comb != mat);
            oracle_misses += usize::from(comb != oracle_balanced(&g, &labels));
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        discrepancies == 0 && oracle_misses == 0 && elapsed <= Duration::from_secs(60),
        format!("{} partitions, {} discrepancies, {} oracle disagreements, {:?}", checked, discrepancies, oracle_misses, elapsed),
    )
}

fn c3_lift_feasibility() -> Outcome {
    let q = graph("fig6");
    let k = symmetric_lift_k_vector(&q).unwrap();
    let p = partition("fig6_partition", 6);
    let a = verify_lift(&graph("fig6_lift_a"), &p, &q).ok;
    let b = verify_lift(&graph("fig6_lift_b"), &p, &q).ok;
    Outcome::new(k == Some(vec![1, 3, 2]) && a && b, format!("k = {:?}, lift a {}, lift b {}", k, a, b))
}

fn c4_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut built, mut failures, mut drawn) = (0, 0, 0);
    while built < 100 {
        drawn += 1;
        let m = rng.gen_range(1..=4);
        let mut adj = vec![0u32; m * m];
        for i in 0..m {
            adj[i * m + i] = rng.gen_range(0..=3);
            for j in i + 1..m {
                if rng.gen_bool(0.6) {
                    adj[i * m + j] = rng.gen_range(1..=3);
                    adj[j * m + i] = rng.gen_range(1..=3);
                }
            }
        }
        let q = DiGraph::from_matrix(m, adj).unwrap();
        let Some(k) = symmetric_lift_k_vector(&q).unwrap() else { continue };
        let k: Vec<usize> = k.into_iter().map(|v| v as usize).collect();
        let w = build_symmetric_lift(&q, &k).unwrap();
        let ok = w.lift.is_symmetric()
            && verify_lift(&w.lift, &w.partition, &q).ok
            && oracle_balanced(&w.lift, w.partition.labels())
            && oracle_quotient(&w.lift, w.partition.labels()) == q.rows();
        failures += usize::from(!ok);
        built += 1;
    }
    Outcome::new(failures == 0, format!("{} lifts from {} draws, {} failures", built, drawn, failures))
}

fn c5_simple_lifts() -> Outcome {
    let q = graph("fig12");
    let mut ok = true;
    let mut sizes = Vec::new();
    for r in 3..=5 {
        match build_simple_symmetric_lift(&q, r) {
            Ok(w) => {
                ok &= w.lift.matrix().iter().all(|&a| a <= 1)
                    && w.lift.is_symmetric()
                    && verify_lift(&w.lift, &w.partition, &q).ok;
                sizes.push(w.lift.n());
            }
            Err(_) => ok = false,
        }
    }
    let refused = build_simple_symmetric_lift(&q, 2).is_err();
    let nine = verify_lift(&graph("fig12_lift9"), &partition("fig12_lift9_partition", 9), &q).ok;
    let twelve = verify_lift(&graph("fig12_lift12"), &partition("fig12_lift12_partition", 12), &q).ok;
    Outcome::new(
        ok && sizes == [9, 12, 15] && refused && nine && twelve,
        format!("sizes {:?}, r=2 refused {}, fixture 9x9 {}, fixture 12x12 {}", sizes, refused, nine, twelve),
    )
}

fn c6_symmetric_quotients() -> Outcome {
    let g = graph("fig8");
    let s1 = quotient_is_symmetric(&g, &partition("fig8_bowtie1", 6)).unwrap();
    let s2 = quotient_is_symmetric(&g, &partition("fig8_bowtie2", 6)).unwrap();
    let first = s1.symmetric && s1.quotient.quotient.rows() == [[0, 1, 2], [1, 0, 2], [2, 2, 1]];
    let second = !s2.symmetric && s2.quotient.quotient.rows() == [[1, 1, 1], [4, 0, 1], [4, 1, 0]];
    let pairs = [
        ("petersen", "petersen_bowtie"),
        ("petersen", "petersen_bowtie2"),
        ("fig8", "fig8_bowtie1"),
        ("fig8", "fig8_bowtie2"),
        ("fig11", "fig11_partition"),
        ("fig6_lift_a", "fig6_partition"),
        ("fig6_lift_b", "fig6_partition"),
        ("fig12_lift9", "fig12_lift9_partition"),
        ("fig12_lift12", "fig12_lift12_partition"),
    ];
    let (mut eligible, mut divisible) = (0, 0);
    for (gname, pname) in pairs {
        let g = graph(gname);
        let q = quotient(&g, &partition(pname, g.n())).unwrap();
        if q.quotient.is_symmetric() && q.quotient.is_connected() {
            eligible += 1;
            let m = q.quotient.n();
            let equal = q.class_sizes.iter().all(|&k| k == q.class_sizes[0]);
            divisible += usize::from(g.n().is_multiple_of(m) && equal);
        }
    }
    Outcome::new(
        first && second && eligible == divisible && eligible >= 4,
        format!("bowtie1 symmetric {}, bowtie2 non-symmetric {}, divisibility {}/{}", first, second, divisible, eligible),
    )
}

fn c7_gradient_phenomenon() -> Outcome {
    let f = field("fig11", "fig11_custom_gradient");
    let full = is_gradient_numeric(&f, &sample_points(4, 20, SEED, 1.0), 1e-6).unwrap();
    let p = partition("fig11_partition", 4);
    let r = restrict_field(&f, &p).unwrap();
    let pts = sample_points(2, 20, SEED, 1.0);
    let restricted = is_gradient_numeric(&r, &pts, 1e-6).unwrap();
    let mut identity = 0.0f64;
    for y in &pts {
        let (x1, x2) = (y[0], y[1]);
        let expect = [x2 * x2 + 2.0 * x1 * x2, x1 * x1 + 2.0 * x2 * x1];
        identity = identity.max(max_abs_diff(&r.eval(y).unwrap(), &expect));
    }
    Outcome::new(
        full.deviation > 1e-2 && restricted.deviation <= 1e-6 && identity <= 1e-12,
        format!(
            "full deviation {:.3e}, restricted {:.3e}, closed form {:.1e}",
            full.deviation, restricted.deviation, identity
        ),
    )
}

fn c8_hamiltonian_phenomenon() -> Outcome {
    let f = field("fig11", "fig11_custom_hamiltonian");
    let full = is_hamiltonian_numeric(&f, &sample_points(8, 20, SEED, 1.0), 1e-6).unwrap();
    let r = restrict_field(&f, &partition("fig11_partition", 4)).unwrap();
    let restricted = is_hamiltonian_numeric(&r, &sample_points(4, 20, SEED, 1.0), 1e-6).unwrap();
    // h / 2 for the quotient: p1^2 q2 + p2^2 q1 over (q1, q2, p1, p2)
    let h = |x: &[f64]| x[2] * x[2] * x[1] + x[3] * x[3] * x[0];
    let x0 = io::read_state(&fixture("double_edge_x0.json")).unwrap();
    let coarse = energy_drift(h, &integrate(&r, &x0, 1e-3, 2000).unwrap(), 1e-8);
    let fine = energy_drift(h, &integrate(&r, &x0, 5e-4, 4000).unwrap(), 1e-8);
    let ratio = coarse.deviation / fine.deviation;
    Outcome::new(
        !full.pass && restricted.pass && coarse.pass && fine.deviation <= coarse.deviation / 10.0,
        format!(
            "full {:.3e}, restricted {:.3e}, drift {:.3e} at dt, {:.3e} at dt/2 (ratio {:.1})",
            full.deviation, restricted.deviation, coarse.deviation, fine.deviation, ratio
        ),
    )
}

/// Damped cubic cell with generic seeded coupling.
fn seeded_cubic_coupling() -> AdmissibleCoupling {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut c = || rng.gen_range(-0.5..=0.5);
    let internal = Poly::new(1, vec![(-2.0, vec![3]), (c(), vec![2]), (c(), vec![1]), (c(), vec![0])]).unwrap();
    let pairwise = Poly::new(
        2,
        vec![
            (c(), vec![0, 1]),
            (c(), vec![1, 1]),
            (c(), vec![0, 2]),
            (0.2 * c(), vec![2, 1]),
            (0.2 * c(), vec![1, 2]),
            (c(), vec![1, 0]),
        ],
    )
    .unwrap();
    AdmissibleCoupling::scalar(internal, pairwise).unwrap()
}

fn c9_invariance() -> Outcome {
    let g = graph("petersen");
    let f = admissible_field(&g, &seeded_cubic_coupling()).unwrap();
    let mut spreads = Vec::new();
    for (i, name) in ["petersen_bowtie", "petersen_bowtie2", "petersen_unbalanced"].iter().enumerate() {
        let p = partition(name, 10);
        let y = sample_points(p.num_classes(), 1, SEED + i as u64, 1.0).remove(0);
        let x0 = p.polydiagonal().embed(&y);
        let r = flow_invariance_deviation(&f, &p, &x0, 1e-3, 5000, 1e-9).unwrap();
        spreads.push(r.deviation);
    }
    let unbalanced_confirmed = !is_balanced_combinatorial(&g, &partition("petersen_unbalanced", 10)).unwrap();
    Outcome::new(
        spreads[0] <= 1e-9 && spreads[1] <= 1e-9 && spreads[2] > 1e-3 && unbalanced_confirmed,
        format!("spread bowtie {:.1e}, bowtie2 {:.1e}, unbalanced {:.3e}", spreads[0], spreads[1], spreads[2]),
    )
}

fn c10_scaling() -> Outcome {
    let ring = graph("fig11");
    let ring_p = partition("fig11_partition", 4);
    let beta = Poly::new(2, vec![(-0.5, vec![2, 1]), (-0.5, vec![1, 2])]).unwrap();
    let spec = CouplingSpec::new(CouplingKind::Gradient, 1, Poly::zero(1), beta, true).unwrap();
    let pts = sample_points(2, 20, SEED, 1.0);
    let ring_report = scaling_check(&ring, &ring_p, &spec, &pts, 1e-12).unwrap();
    // the lifted function restricts to f = -2 x1^2 x2 - 2 x1 x2^2
    let mut closed = 0.0f64;
    for y in &pts {
        let x = ring_p.polydiagonal().embed(y);
        let f = -2.0 * y[0] * y[0] * y[1] - 2.0 * y[0] * y[1] * y[1];
        closed = closed.max((gradient_function_eval(&ring, &spec, &x).unwrap() - f).abs());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let alpha = random_cubic(&mut rng, 1);
    let raw = random_cubic(&mut rng, 2);
    let beta = raw.add(&raw.permute(&[1, 0])).scale(0.5);
    let spec = CouplingSpec::new(CouplingKind::Gradient, 1, alpha, beta, true).unwrap();
    let six_report =
        scaling_check(&graph("fig8"), &partition("fig8_bowtie1", 6), &spec, &sample_points(3, 20, SEED, 1.0), 1e-12)
            .unwrap();
    Outcome::new(
        ring_report.pass && closed <= 1e-12 && six_report.pass && six_report.samples == 20,
        format!(
            "ring {:.1e} (closed form {:.1e}), six-vertex bowtie {:.1e}",
            ring_report.deviation, closed, six_report.deviation
        ),
    )
}

fn c11_enumeration() -> Outcome {
    let g = graph("petersen");
    let start = Instant::now();
    let all = enumerate_balanced(&g, 12).unwrap();
    let elapsed = start.elapsed();
    let has_bowtie = all.contains(&partition("petersen_bowtie", 10));
    let has_bowtie2 = all.contains(&partition("petersen_bowtie2", 10));
    // every enumerated relation is balanced by the definition
    let sound = all.iter().all(|p| oracle_balanced(&g, p.labels()));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut seeds, mut agree) = (0, 0);
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n, 1);
        let labels = all_labels(n);
        for _ in 0..3 {
            let seed = &labels[rng.gen_range(0..labels.len())];
            let candidates: Vec<&Vec<usize>> =
                labels.iter().filter(|l| refines(l, seed) && oracle_balanced(&g, l)).collect();
            let top = candidates.iter().find(|c| candidates.iter().all(|d| refines(d, c))).unwrap();
            let got = coarsest_balanced_refinement(&g, &Partition::from_labels(seed).unwrap()).unwrap();
            agree += usize::from(got == Partition::from_labels(top).unwrap());
            seeds += 1;
        }
    }
    Outcome::new(
        elapsed <= Duration::from_secs(120) && has_bowtie && has_bowtie2 && sound && agree == seeds,
        format!(
            "{} balanced relations in {:?}, contains bowtie {} and bowtie2 {}, refinement oracle {}/{}",
            all.len(),
            elapsed,
            has_bowtie,
            has_bowtie2,
            agree,
            seeds
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Petersen quotients", c1_petersen_quotients),
        ("balanced by counting equals balanced by matrix", c2_balance_tests_agree),
        ("lift feasibility and the two 6-vertex lifts", c3_lift_feasibility),
        ("symmetric lift round trip", c4_round_trip),
        ("simple lift bound", c5_simple_lifts),
        ("symmetric quotient criterion", c6_symmetric_quotients),
        ("gradient restriction of a non-gradient system", c7_gradient_phenomenon),
        ("Hamiltonian restriction of a non-Hamiltonian system", c8_hamiltonian_phenomenon),
        ("flow invariance of synchrony subspaces", c9_invariance),
        ("scaling of restricted admissible functions", c10_scaling),
        ("balanced relation enumeration", c11_enumeration),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:2} {}: {} ({})", i + 1, tag, name, outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

