//! Batch scan harness: enumerate smooth complete surface fans by iterated
//! blow-ups, sample nef coefficient pairs with a seeded generator, and
//! stream multiplication-map reports as JSON lines.

use std::collections::HashSet;
use std::io::Write;
use std::sync::mpsc;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use oda_core::oda::{phi_cokernel, CokernelReport};
use oda_core::toric::{p1_x_p1, projective_plane};
use oda_core::{Fan, Int, LatticePolytope, ToricLineBundle};

#[derive(Clone, Debug)]
pub struct ScanOpts {
    pub picard: usize,
    pub max_coeff: i64,
    pub samples: usize,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub sorted: bool,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub index: usize,
    pub fan: Fan,
    pub coeffs1: Vec<i64>,
    pub coeffs2: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
pub struct ScanRecord {
    pub instance: InstanceDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<CokernelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock duration; excluded from the determinism guarantee.
    pub micros: u128,
}

/// All smooth complete surface fans with Picard rank at most `picard_max`,
/// reachable from the two minimal ones by iterated blow-ups. Duplicates are
/// removed by literal ray set only (not up to lattice automorphism), so the
/// list over-counts isomorphism classes.
pub fn smooth_surface_fans(picard_max: usize) -> Result<Vec<Fan>> {
    let mut seen: HashSet<Vec<Vec<Int>>> = HashSet::new();
    let mut out: Vec<Fan> = Vec::new();
    let mut frontier: Vec<Fan> = vec![projective_plane(), p1_x_p1()];
    let key = |f: &Fan| -> Vec<Vec<Int>> {
        let mut k: Vec<Vec<Int>> = f.rays().iter().map(|r| r.coords().to_vec()).collect();
        k.sort();
        k
    };
    while let Some(fan) = frontier.pop() {
        if fan.picard_rank() > picard_max || !seen.insert(key(&fan)) {
            continue;
        }
        if fan.picard_rank() < picard_max {
            for i in 0..fan.max_cones().len() {
                frontier.push(fan.blowup(i)?);
            }
        }
        out.push(fan);
    }
    out.sort_by_key(|f| (f.picard_rank(), f.rays().len()));
    Ok(out)
}

/// A seeded nef coefficient vector with entries in `0..=max_coeff`;
/// `None` after too many rejections (tiny nef cones).
fn sample_nef(fan: &Fan, max_coeff: i64, rng: &mut ChaCha8Rng) -> Result<Option<Vec<i64>>> {
    for _ in 0..500 {
        let coeffs: Vec<i64> = (0..fan.rays().len())
            .map(|_| rng.gen_range(0..=max_coeff))
            .collect();
        let l = ToricLineBundle::from_i64(fan.clone(), &coeffs)?;
        if l.is_nef()? {
            return Ok(Some(coeffs));
        }
    }
    Ok(None)
}

/// Deterministic instance list: per fan, `samples` nef pairs from the
/// seeded generator.
pub fn build_instances(opts: &ScanOpts) -> Result<Vec<InstanceDescriptor>> {
    let fans = smooth_surface_fans(opts.picard)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for fan in &fans {
        for _ in 0..opts.samples {
            let Some(c1) = sample_nef(fan, opts.max_coeff, &mut rng)? else {
                continue;
            };
            let Some(c2) = sample_nef(fan, opts.max_coeff, &mut rng)? else {
                continue;
            };
            out.push(InstanceDescriptor {
                index: out.len(),
                fan: fan.clone(),
                coeffs1: c1,
                coeffs2: c2,
            });
        }
    }
    Ok(out)
}

fn bundle_lattice_polytope(fan: &Fan, coeffs: &[i64]) -> Result<LatticePolytope> {
    let l = ToricLineBundle::from_i64(fan.clone(), coeffs)?.tightened()?;
    let p = l
        .polytope_of()?
        .ok_or_else(|| anyhow!("empty polytope for a nef bundle"))?;
    LatticePolytope::new(p).context("nef polytope has non-integral vertices")
}

pub fn run_instance(inst: &InstanceDescriptor) -> Result<CokernelReport> {
    let p1 = bundle_lattice_polytope(&inst.fan, &inst.coeffs1)?;
    let p2 = bundle_lattice_polytope(&inst.fan, &inst.coeffs2)?;
    phi_cokernel(&p1, &p2).map_err(Into::into)
}

/// Runs the scan; returns the number of errored instances (nonzero exit).
pub fn run_scan(opts: &ScanOpts, out: &mut dyn Write) -> Result<usize> {
    let instances = build_instances(opts)?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = opts.jobs {
            b = b.num_threads(j);
        }
        b.build().context("building worker pool")?
    };
    let (tx, rx) = mpsc::channel::<ScanRecord>();
    pool.scope(|scope| {
        for inst in &instances {
            let tx = tx.clone();
            scope.spawn(move |_| {
                let start = Instant::now();
                let (report, error) = match run_instance(inst) {
                    Ok(r) => (Some(r), None),
                    Err(e) => (None, Some(format!("{e:#}"))),
                };
                let _ = tx.send(ScanRecord {
                    instance: inst.clone(),
                    report,
                    error,
                    micros: start.elapsed().as_micros(),
                });
            });
        }
    });
    drop(tx);
    let mut errors = 0usize;
    if opts.sorted {
        let mut records: Vec<ScanRecord> = rx.into_iter().collect();
        records.sort_by_key(|r| r.instance.index);
        for r in records {
            errors += r.error.is_some() as usize;
            writeln!(out, "{}", serde_json::to_string(&r)?)?;
        }
    } else {
        for r in rx {
            errors += r.error.is_some() as usize;
            writeln!(out, "{}", serde_json::to_string(&r)?)?;
        }
    }
    Ok(errors)
}
