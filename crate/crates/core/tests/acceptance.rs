//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::path::Path;
use std::process::{Command, ExitCode};

use coherence::family::{sample_haar_pure, sample_hs_mixed, sample_incoherent, seeded_rng};
use coherence::measures::{c_lp, c_lp_upper, mixedness_linear};
use coherence::tetra::{tetra_table, Region};
use coherence::verify::*;
use coherence::{make_family, HermitianState, Mode, StateFamilySpec};

const DIMS: std::ops::RangeInclusive<usize> = 2..=8;
const P_ALL: [f64; 5] = [1.0, 1.25, 1.5, 1.75, 2.0];
const P_BELOW_TWO: [f64; 4] = [1.0, 1.25, 1.5, 1.75];
const HS_PER_DIM: usize = 1000;

struct Ensemble {
    d: usize,
    hs: Vec<HermitianState>,
    /// Haar pure states, incoherent states and named families.
    extra: Vec<HermitianState>,
}

fn ensembles() -> Vec<Ensemble> {
    DIMS.map(|d| {
        let mut rng = seeded_rng(0xC0FFEE + d as u64);
        let hs = (0..HS_PER_DIM).map(|_| sample_hs_mixed(d, d, &mut rng)).collect();
        let mut extra: Vec<HermitianState> = (0..100).map(|_| sample_haar_pure(d, &mut rng)).collect();
        extra.extend((0..100).map(|_| sample_incoherent(d, &mut rng)));
        let mut specs = vec![StateFamilySpec::MaxCoherentPure, StateFamilySpec::CompletelyMixed];
        specs.extend((1..10).map(|k| StateFamilySpec::Mcms { a: k as f64 / 10.0 }));
        specs.push(StateFamilySpec::SinglePair {
            i: 0,
            j: d - 1,
            magnitude: 0.5 / d as f64,
        });
        let n = d * (d - 1) / 2;
        for count in 1..=n {
            specs.push(StateFamilySpec::UniformOffDiag {
                count,
                magnitude: 0.5 / (d * (d - 1)) as f64,
            });
        }
        for s in specs {
            let rho = make_family(&s, d).unwrap();
            assert_eq!(rho.mode(), Mode::Strict, "{s:?}");
            extra.push(rho);
        }
        Ensemble { d, hs, extra }
    })
    .collect()
}

/// Largest `|value|` over results; an error counts as +inf.
fn worst_abs<I: IntoIterator<Item = coherence::Result<IdentityResult>>>(it: I) -> f64 {
    it.into_iter()
        .map(|r| r.map_or(f64::INFINITY, |r| r.value.abs()))
        .fold(0.0, f64::max)
}

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, n: u32, ok: bool, detail: String) {
        if !ok {
            self.failures += 1;
        }
        println!(
            "criterion {n:>2} [PRIMARY] {}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
}

fn criterion_1_to_4(r: &mut Report, ens: &[Ensemble], tol: &Tolerances) {
    let c1 = worst_abs(
        ens.iter()
            .flat_map(|e| e.hs.iter().map(|s| residual_l2_triality(s, tol))),
    );
    r.line(
        1,
        c1 < 1e-10,
        format!("l2 triality max |residual| = {c1:.3e} (< 1e-10)"),
    );

    let c2 = worst_abs(
        ens.iter()
            .flat_map(|e| e.hs.iter().map(|s| residual_max_relation(s, tol))),
    );
    r.line(
        2,
        c2 < 1e-12,
        format!("max-coherence/mixedness max |residual| = {c2:.3e} (< 1e-12)"),
    );

    let c3 = worst_abs(ens.iter().flat_map(|e| {
        e.hs.iter()
            .flat_map(|s| P_BELOW_TWO.iter().map(move |&p| residual_x_tradeoff(s, p, tol)))
    }));
    r.line(
        3,
        c3 < 1e-10,
        format!("X trade-off max |residual| = {c3:.3e} over p in {P_BELOW_TWO:?} (< 1e-10)"),
    );

    let c4 = worst_abs(ens.iter().flat_map(|e| {
        e.hs.iter()
            .flat_map(|s| P_ALL.iter().map(move |&p| residual_y_tradeoff(s, p, tol)))
    }));
    r.line(
        4,
        c4 < 1e-10,
        format!("Y trade-off max |residual| = {c4:.3e} over p in {P_ALL:?} (< 1e-10)"),
    );
}

fn criterion_5(r: &mut Report, ens: &[Ensemble], tol: &Tolerances) {
    let machado_states = || {
        ens.iter()
            .filter(|e| e.d >= 3)
            .flat_map(|e| e.hs.iter().chain(&e.extra))
    };
    let equiv = worst_abs(machado_states().map(|s| residual_machado_equivalence(s, tol)));
    let rel = worst_abs(machado_states().map(|s| residual_machado(s, tol)));
    r.line(
        5,
        equiv < 1e-12 && rel < 1e-10,
        format!(
            "(d-2)(d+1)/2 T vs d/(d-1) Y(1): {equiv:.3e} (< 1e-12); Machado relation {rel:.3e} (< 1e-10); \
             inner sum over unordered pairs k<l"
        ),
    );
}

fn criterion_6(r: &mut Report, ens: &[Ensemble], tol: &Tolerances) {
    let mut min_slack = f64::INFINITY;
    let mut worst_id = None;
    let mut count = 0usize;
    for e in ens {
        for s in e.hs.iter().chain(&e.extra) {
            for &p in &P_ALL {
                for res in slack_inequalities(s, p, tol).unwrap() {
                    count += 1;
                    if res.value < min_slack {
                        min_slack = res.value;
                        worst_id = Some(res.identity_id);
                    }
                }
            }
        }
    }
    let id = worst_id.map_or("-".to_owned(), |i| i.name());
    r.line(
        6,
        min_slack >= -1e-12,
        format!("min slack = {min_slack:.3e} ({id}) over {count} inequality evaluations (>= -1e-12)"),
    );
}

fn criterion_7(r: &mut Report, ens: &[Ensemble], tol: &Tolerances) {
    let states = || ens.iter().flat_map(|e| e.hs.iter().chain(&e.extra));
    let durr = worst_abs(states().map(|s| residual_durr(s, tol)));
    let jb = worst_abs(states().map(|s| residual_jb(s, tol)));
    let fl = worst_abs(states().map(|s| residual_fuluo(s, tol)));
    let vis = worst_abs(states().map(|s| Ok(residual_visibility_consistency(s, tol))));
    r.line(
        7,
        durr.max(jb).max(fl) < 1e-10 && vis < 1e-12,
        format!("Durr {durr:.3e}, Jakob-Bergou {jb:.3e}, Fu-Luo {fl:.3e} (< 1e-10); C_l2 vs V_D {vis:.3e} (< 1e-12)"),
    );
}

fn criterion_8(r: &mut Report, ens: &[Ensemble]) {
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_uniform = 0.0f64;
    for e in ens {
        for &p in &P_ALL {
            let bound = c_lp_upper(e.d, p).unwrap();
            for s in e.hs.iter().chain(&e.extra) {
                worst_excess = worst_excess.max(c_lp(s, p).unwrap() - bound);
            }
            let uniform = make_family(&StateFamilySpec::MaxCoherentPure, e.d).unwrap();
            worst_uniform = worst_uniform.max((c_lp(&uniform, p).unwrap() - bound).abs());
        }
    }
    let mut convexity_violations = 0;
    let mut suites = 0;
    for d in DIMS {
        for (k, &p) in P_ALL.iter().enumerate() {
            let res = axiom_suite_wave(d, p, 1000, 500 + 10 * d as u64 + k as u64).unwrap();
            convexity_violations += res
                .iter()
                .filter(|a| a.axiom_id == AxiomId::A4)
                .map(|a| a.violations)
                .sum::<usize>();
            suites += 1;
        }
        let res = axiom_suite_particle(d, 1000, 900 + d as u64).unwrap();
        convexity_violations += res
            .iter()
            .filter(|a| a.axiom_id == AxiomId::B4)
            .map(|a| a.violations)
            .sum::<usize>();
        suites += 1;
    }
    r.line(
        8,
        worst_excess <= 1e-10 && worst_uniform <= 1e-12 && convexity_violations == 0,
        format!(
            "max C_lp - bound = {worst_excess:.3e} (<= 1e-10); uniform state gap {worst_uniform:.3e} (<= 1e-12); \
             a4/b4 violations {convexity_violations} over {suites} suites x 1000 mixtures"
        ),
    );
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rd = csv::Reader::from_path(path).unwrap();
    let header = rd.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = rd
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let k = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("missing column {name}"));
    rows.iter().map(|r| r[k].parse().unwrap()).collect()
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

/// Non-decreasing up to the maximum, strictly falling after it, peak not at the end.
fn rises_then_falls(baseline: f64, v: &[f64]) -> bool {
    let peak = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let k = v.iter().rposition(|&x| x == peak).unwrap();
    let up = std::iter::once(baseline)
        .chain(v[..=k].iter().cloned())
        .collect::<Vec<_>>();
    peak > baseline
        && k + 1 < v.len()
        && up.windows(2).all(|w| w[1] >= w[0])
        && strictly_increasing(&v[k..].iter().map(|x| -x).collect::<Vec<_>>())
}

fn run_cli(args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_coherence"))
        .args(args)
        .status()
        .map(|s| s.success())
        .unwrap_or(false)
}

fn criterion_9(r: &mut Report) {
    let dir = tempfile::tempdir().unwrap();
    let a_path = dir.path().join("panel_a.csv");
    let b_path = dir.path().join("panel_b.csv");
    let ran = run_cli(&["sweep", "--panel", "count", "--out", a_path.to_str().unwrap()])
        && run_cli(&["sweep", "--panel", "magnitude", "--out", b_path.to_str().unwrap()]);
    if !ran {
        r.line(9, false, "sweep subcommand failed".into());
        return;
    }
    let (ha, ra) = read_csv(&a_path);
    let (x, y) = (column(&ha, &ra, "x_p1"), column(&ha, &ra, "y_p1"));
    let n = column(&ha, &ra, "grid_value");
    let psd: Vec<&str> = ra.iter().map(|row| row.last().unwrap().as_str()).collect();
    // closed forms at d = 3, m = 1/3: X = 2n/9 - 2n^2/27, Y = 2n^2/9 - 2n/9
    let closed_ok = n == [1.0, 2.0, 3.0]
        && x.iter()
            .zip(&n)
            .all(|(v, n)| (v - (2.0 * n / 9.0 - 2.0 * n * n / 27.0)).abs() < 1e-15)
        && y.iter()
            .zip(&n)
            .all(|(v, n)| (v - (2.0 * n * n / 9.0 - 2.0 * n / 9.0)).abs() < 1e-15);
    // n = 0 is the completely mixed state, where X = 0
    let shape_a = rises_then_falls(0.0, &x) && strictly_increasing(&y);

    let (hb, rb) = read_csv(&b_path);
    let m = column(&hb, &rb, "grid_value");
    let mono_b = ["x_p1", "y_p1", "c_lp_sq_p1"]
        .iter()
        .all(|c| strictly_increasing(&column(&hb, &rb, c)));
    let manifests = [&a_path, &b_path]
        .iter()
        .all(|p| coherence::manifest::manifest_path(p).exists());
    r.line(
        9,
        closed_ok && shape_a && mono_b && psd == ["true", "false", "true"] && manifests,
        format!(
            "panel a X = {x:?}, Y = {y:?}, strict_psd = {psd:?}; X rises then falls, Y increasing: {shape_a}; \
             panel b over {} m values in [{}, {:.4}] monotone: {mono_b}",
            m.len(),
            m[0],
            m[m.len() - 1]
        ),
    );
}

fn criterion_10(r: &mut Report) {
    let mut worst = 0.0f64;
    let mut rows = 0;
    let mut vertices_ok = true;
    for d in DIMS {
        for &p in &P_BELOW_TWO {
            for row in tetra_table(d, p).unwrap() {
                rows += 1;
                worst = worst.max(row.reduced_residual.abs()).max(row.vanishing_max);
                let t = [row.wave_term, row.m_l, row.p_sq, row.x_term];
                let expect = match row.region {
                    Region::VertexM => Some([0.0, 1.0, 0.0, 0.0]),
                    Region::VertexP => Some([0.0, 0.0, 1.0, 0.0]),
                    _ => None,
                };
                if let Some(e) = expect {
                    vertices_ok &= t.iter().zip(e).all(|(a, b)| (a - b).abs() < 1e-15);
                }
            }
        }
    }
    // segment CM at p = 1: C_l1^2/(d-1)^2 + M_l = 1 on MCMS(a)
    let mut cm = 0.0f64;
    for d in DIMS {
        for k in 1..10 {
            let rho = make_family(&StateFamilySpec::Mcms { a: k as f64 / 10.0 }, d).unwrap();
            let c1 = c_lp(&rho, 1.0).unwrap();
            let df = d as f64;
            cm = cm.max((c1 * c1 / ((df - 1.0) * (df - 1.0)) + mixedness_linear(&rho) - 1.0).abs());
        }
    }
    r.line(
        10,
        worst < 1e-10 && cm < 1e-10 && vertices_ok,
        format!(
            "{rows} region rows, worst reduced residual {worst:.3e} (< 1e-10); vertices M, P exact: {vertices_ok}; \
             segment CM at p = 1 residual {cm:.3e}"
        ),
    );
}

fn main() -> ExitCode {
    let tol = Tolerances::default();
    let ens = ensembles();
    let mut r = Report { failures: 0 };
    criterion_1_to_4(&mut r, &ens, &tol);
    criterion_5(&mut r, &ens, &tol);
    criterion_6(&mut r, &ens, &tol);
    criterion_7(&mut r, &ens, &tol);
    criterion_8(&mut r, &ens);
    criterion_9(&mut r);
    criterion_10(&mut r);
    println!("acceptance: {} of 10 criteria passed", 10 - r.failures);
    if r.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
