//! `oda`: exact lattice-polytope and toric line bundle computations from the
//! command line. All geometry is exact rational arithmetic; JSON in, JSON
//! out, with optional SVG figures for 2D scenes.

mod io;
mod scan;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use oda_core::coverage::{
    covers, minkowski_weyl_check, quasi_cover_report, vertex_fit_cover,
};
use oda_core::oda::{
    local_oda_check, order_report, phi_cokernel, projective_normality_probe, psi_check,
};
use oda_core::surface::{
    classify_translation_vector, contact_points, edge_endpoints, sfhn_verify,
};
use oda_core::toric::{hilbert_basis, is_general, section5_bounds};
use oda_core::{LatticePolytope, RationalPolytope, RatVector};

use io::{
    load_bundle, load_cone, load_fan, load_lattice_polytope, load_pieces, load_polyhedron,
    load_polytope, parse_ivec, parse_rat, print_json,
};

#[derive(Parser)]
#[command(
    name = "oda",
    about = "Exact multiplication-map and covering experiments on toric line bundles",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fan validation, blow-ups, effective bounds, nef-cone Hilbert bases.
    Fan {
        #[command(subcommand)]
        cmd: FanCmd,
    },
    /// Polytope algebra: Minkowski sum/difference, lattice points, edges.
    Poly {
        #[command(subcommand)]
        cmd: PolyCmd,
    },
    /// Covering decisions: translate covers, vertex-fit, quasi-covers,
    /// Minkowski-Weyl checks.
    Cover {
        #[command(subcommand)]
        cmd: CoverCmd,
    },
    /// Multiplication-map questions: cokernels, coverage, partial orders,
    /// local checks, batch scans.
    Oda {
        #[command(subcommand)]
        cmd: OdaCmd,
    },
    /// Dimension-two layer: covering verdicts with certificates, contact
    /// points, translation-vector types.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
}

#[derive(Subcommand)]
enum FanCmd {
    /// Validate a fan and report smoothness, completeness, Picard rank.
    Check {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Blow up one maximal cone (stellar subdivision by the ray sum).
    Blowup {
        #[arg(long)]
        fan: PathBuf,
        /// Index of the maximal cone to subdivide.
        #[arg(long)]
        cone: usize,
    },
    /// Effective bounds from the nef-cone Hilbert basis.
    Bounds {
        #[arg(long)]
        fan: PathBuf,
        /// Optional nef bundle for the separation bound.
        #[arg(long)]
        l2: Option<PathBuf>,
        /// Ray index for the separation bound (requires --l2).
        #[arg(long)]
        ray: Option<usize>,
    },
    /// Hilbert basis of the nef cone (coefficient vectors).
    Hilbert {
        #[arg(long)]
        fan: PathBuf,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Minkowski sum of two polytopes.
    Sum(TwoPoly),
    /// Minkowski difference A ⊖ B (null when empty).
    Diff(TwoPoly),
    /// Lattice points of a polytope.
    Points {
        #[arg(long)]
        a: PathBuf,
    },
    /// Edge descriptors of a polytope.
    Edges {
        #[arg(long)]
        a: PathBuf,
    },
}

#[derive(Args)]
struct TwoPoly {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Decide whether the pieces cover the target exactly.
    Run {
        #[arg(long)]
        target: PathBuf,
        /// JSON array of piece polytopes.
        #[arg(long)]
        pieces: PathBuf,
        /// Write an SVG figure of the scene (2D only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cover a polytope by vertex-anchored scaled copies of itself.
    Vertexfit {
        #[arg(long)]
        a: PathBuf,
        /// Scale factor in (0, 1], e.g. `3/4`.
        #[arg(long)]
        c: String,
    },
    /// Residual components of a partial cover by contained pieces.
    Quasi {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        pieces: PathBuf,
    },
    /// Minkowski-Weyl decomposition check on a pointed polyhedron.
    Mw {
        /// JSON object with `finite` (vertices) and `rays`.
        #[arg(long)]
        polyhedron: PathBuf,
    },
}

#[derive(Subcommand)]
enum OdaCmd {
    /// Cokernel of the lattice-point addition map on a pair.
    Phi(TwoLatticePoly),
    /// Coverage of the second polytope by lattice translates of the first.
    Psi(TwoLatticePoly),
    /// Truncated local check against a cone at infinity.
    Local {
        #[arg(long)]
        p1: PathBuf,
        #[arg(long)]
        p2: PathBuf,
        /// JSON object with the dual cone's `rays`.
        #[arg(long)]
        cone: PathBuf,
        /// Truncation depth (positive).
        #[arg(long)]
        depth: usize,
    },
    /// Projective-normality probe for an ample bundle.
    Normality {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Partial-order verdicts for a pair of nef bundles on one fan.
    Order {
        #[arg(long)]
        l1: PathBuf,
        #[arg(long)]
        l2: PathBuf,
    },
    /// Batch scan over smooth surface fans with sampled nef pairs.
    Scan {
        /// Instance family; currently only `smooth-surface` (iterated
        /// blow-ups, deduplicated by literal ray set).
        #[arg(long, default_value = "smooth-surface")]
        family: String,
        /// Maximum Picard rank of the generated fans.
        #[arg(long, default_value_t = 3)]
        picard: usize,
        /// Coefficient range 0..=max-coeff per ray.
        #[arg(long, default_value_t = 3)]
        max_coeff: i64,
        /// Nef pairs sampled per fan.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// RNG seed; required for reproducibility.
        #[arg(long)]
        seed: u64,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Buffer and emit records in instance order.
        #[arg(long)]
        sorted: bool,
    },
}

#[derive(Args)]
struct TwoLatticePoly {
    #[arg(long)]
    p1: PathBuf,
    #[arg(long)]
    p2: PathBuf,
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Coverage verdict for a smooth polygon pair, optionally with an
    /// independent blow-down certificate.
    Sfhn {
        #[arg(long)]
        p1: PathBuf,
        #[arg(long)]
        p2: PathBuf,
        #[arg(long)]
        certificate: bool,
        /// Write an SVG figure of the translate family (2D).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Contact points of a polygon for a lattice direction.
    Contacts {
        #[arg(long)]
        a: PathBuf,
        /// Direction, e.g. `1,0`.
        #[arg(long)]
        u: String,
    },
    /// Classify a translation vector against a cut edge of the polygon.
    Classify {
        #[arg(long)]
        a: PathBuf,
        /// Translation vector, e.g. `1,-1`.
        #[arg(long)]
        v: String,
        /// Inward normal of the cut edge (default: the blow-up frame).
        #[arg(long, default_value = "-1,-1")]
        normal: String,
    },
}

fn write_svg(path: &PathBuf, scene: &svg::Scene) -> Result<()> {
    let text = svg::render(scene)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn translate_family(p1: &RationalPolytope, p2: &RationalPolytope) -> Result<Vec<RationalPolytope>> {
    Ok(match p2.minkowski_difference(p1)? {
        Some(diff) => diff
            .lattice_points()
            .iter()
            .map(|m| p1.translate(&m.to_rat()))
            .collect(),
        None => vec![],
    })
}

fn cover_scene(
    target: &RationalPolytope,
    pieces: &[RationalPolytope],
    witness: Option<&RatVector>,
) -> svg::Scene {
    let contained: Vec<RationalPolytope> = pieces
        .iter()
        .filter(|p| target.contains_polytope(*p))
        .cloned()
        .collect();
    let residual = if contained.len() == pieces.len() {
        quasi_cover_report(target, &contained)
            .map(|q| q.leftover_components)
            .unwrap_or_default()
    } else {
        vec![]
    };
    let mut points = Vec::new();
    if let Some(w) = witness {
        points.push((w.clone(), format!("witness {w:?}")));
    }
    svg::Scene {
        target: target.clone(),
        pieces: pieces.to_vec(),
        residual,
        points,
    }
}

fn run() -> Result<usize> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Fan { cmd } => match cmd {
            FanCmd::Check { fan } => {
                let f = load_fan(&fan)?;
                print_json(&json!({
                    "smooth": f.is_smooth(),
                    "complete": f.is_complete()?,
                    "picard_rank": f.picard_rank(),
                    "general": is_general(&f)?,
                    "walls": f.walls()?,
                }))?;
            }
            FanCmd::Blowup { fan, cone } => {
                let f = load_fan(&fan)?;
                print_json(&f.blowup(cone)?)?;
            }
            FanCmd::Bounds { fan, l2, ray } => {
                let f = load_fan(&fan)?;
                let l2 = match &l2 {
                    Some(p) => Some(load_bundle(p)?),
                    None => None,
                };
                let report = section5_bounds(&f, l2.as_ref(), ray)?;
                print_json(&report)?;
            }
            FanCmd::Hilbert { fan } => {
                let f = load_fan(&fan)?;
                let basis = hilbert_basis(&f)?;
                let coeffs: Vec<_> = basis.iter().map(|b| io::ints_json(b.coeffs())).collect();
                print_json(&json!({ "basis": coeffs }))?;
            }
        },
        Cmd::Poly { cmd } => match cmd {
            PolyCmd::Sum(tp) => {
                let (a, b) = (load_polytope(&tp.a)?, load_polytope(&tp.b)?);
                let s = a.minkowski_sum(&b)?;
                print_json(&json!({ "vertices": s.vertices() }))?;
            }
            PolyCmd::Diff(tp) => {
                let (a, b) = (load_polytope(&tp.a)?, load_polytope(&tp.b)?);
                match a.minkowski_difference(&b)? {
                    Some(d) => print_json(&json!({ "vertices": d.vertices() }))?,
                    None => print_json(&json!(null))?,
                }
            }
            PolyCmd::Points { a } => {
                let p = load_polytope(&a)?;
                print_json(&json!({ "points": p.lattice_points() }))?;
            }
            PolyCmd::Edges { a } => {
                let p = load_polytope(&a)?;
                print_json(&json!({ "edges": p.edges() }))?;
            }
        },
        Cmd::Cover { cmd } => match cmd {
            CoverCmd::Run {
                target,
                pieces,
                svg,
            } => {
                let t = load_polytope(&target)?;
                let ps = load_pieces(&pieces)?;
                let report = covers(&t, &ps)?;
                if let Some(path) = &svg {
                    write_svg(path, &cover_scene(&t, &ps, report.witness.as_ref()))?;
                }
                print_json(&report)?;
            }
            CoverCmd::Vertexfit { a, c } => {
                let p = load_polytope(&a)?;
                let c = parse_rat(&c)?;
                print_json(&vertex_fit_cover(&p, &c)?)?;
            }
            CoverCmd::Quasi { target, pieces } => {
                let t = load_polytope(&target)?;
                let ps = load_pieces(&pieces)?;
                print_json(&quasi_cover_report(&t, &ps)?)?;
            }
            CoverCmd::Mw { polyhedron } => {
                let q = load_polyhedron(&polyhedron)?;
                print_json(&minkowski_weyl_check(&q)?)?;
            }
        },
        Cmd::Oda { cmd } => match cmd {
            OdaCmd::Phi(tp) => {
                let (p1, p2) = load_pair(&tp)?;
                print_json(&phi_cokernel(&p1, &p2)?)?;
            }
            OdaCmd::Psi(tp) => {
                let (p1, p2) = load_pair(&tp)?;
                print_json(&psi_check(&p1, &p2)?)?;
            }
            OdaCmd::Local {
                p1,
                p2,
                cone,
                depth,
            } => {
                let a = load_lattice_polytope(&p1)?;
                let b = load_lattice_polytope(&p2)?;
                let c = load_cone(&cone)?;
                print_json(&local_oda_check(&a, &b, &c, depth)?)?;
            }
            OdaCmd::Normality { bundle, k } => {
                let l = load_bundle(&bundle)?;
                print_json(&projective_normality_probe(&l, k)?)?;
            }
            OdaCmd::Order { l1, l2 } => {
                let a = load_bundle(&l1)?;
                let b = load_bundle(&l2)?;
                if !a.fan().is_same(b.fan()) {
                    return Err(anyhow!("the two bundles live on different fans"));
                }
                print_json(&order_report(&a, &b)?)?;
            }
            OdaCmd::Scan {
                family,
                picard,
                max_coeff,
                samples,
                seed,
                jobs,
                sorted,
            } => {
                if family != "smooth-surface" {
                    return Err(anyhow!("unknown family {family:?}; try smooth-surface"));
                }
                let opts = scan::ScanOpts {
                    picard,
                    max_coeff,
                    samples,
                    seed,
                    jobs,
                    sorted,
                };
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                let errors = scan::run_scan(&opts, &mut lock)?;
                return Ok(errors);
            }
        },
        Cmd::Surface { cmd } => match cmd {
            SurfaceCmd::Sfhn {
                p1,
                p2,
                certificate,
                svg,
            } => {
                let a = load_lattice_polytope(&p1)?;
                let b = load_lattice_polytope(&p2)?;
                let report = sfhn_verify(&a, &b, certificate)?;
                if let Some(path) = &svg {
                    let pieces = translate_family(a.as_rational(), b.as_rational())?;
                    let mut scene =
                        cover_scene(b.as_rational(), &pieces, report.inner.witness.as_ref());
                    for u in [parse_ivec("1,0")?, parse_ivec("0,1")?] {
                        if let Ok(cp) = contact_points(b.as_rational(), &u) {
                            for pt in cp.points {
                                scene
                                    .points
                                    .push((pt.clone(), format!("contact {u:?} {pt:?}")));
                            }
                        }
                    }
                    write_svg(path, &scene)?;
                }
                print_json(&report)?;
            }
            SurfaceCmd::Contacts { a, u } => {
                let p = load_polytope(&a)?;
                let u = parse_ivec(&u)?;
                print_json(&contact_points(&p, &u)?)?;
            }
            SurfaceCmd::Classify { a, v, normal } => {
                let p = load_polytope(&a)?;
                let v = parse_ivec(&v)?;
                let n = parse_ivec(&normal)?;
                let (a0, a0p) = edge_endpoints(&p, &n)?;
                print_json(&classify_translation_vector(&p, &v, &a0, &a0p)?)?;
            }
        },
    }
    Ok(0)
}

fn load_pair(tp: &TwoLatticePoly) -> Result<(LatticePolytope, LatticePolytope)> {
    Ok((
        load_lattice_polytope(&tp.p1)?,
        load_lattice_polytope(&tp.p2)?,
    ))
}

fn main() -> ExitCode {
    match run() {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
