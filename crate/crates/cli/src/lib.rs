//! Command-line front end for `digitop-core`.
//!
//! Every command builds a [`Report`] from library calls only; [`run`]
//! prints it as text or JSON and returns the process exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use digitop_core::afpp::{self, box_center2, CurveMap, DEFAULT_BUDGET};
use digitop_core::convexity::{convex_hull, is_digitally_convex, is_hull_saturated, segment_endpoints, Convexity};
use digitop_core::curves::{canonical_bounding_curves, Curve};
use digitop_core::io::{format_image, format_map_table, format_point_list, parse_image, parse_map_table, render_svg, Overlays};
use digitop_core::lattice::{complement_components, components, is_connected};
use digitop_core::maps::PointMap;
use digitop_core::retract::{convex_disk_retraction, convex_retraction};
use digitop_core::{fixtures, AdjacencyKind, DigitalImage, Error, PointSet};
use serde_json::{json, Value};

type C = i64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "digitop", version, about = "Convexity, retractions and approximate fixed points in the digital plane")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Size, bounds, components and holes of an image.
    Info {
        image: PathBuf,
        #[arg(long, default_value = "c2")]
        adj: AdjacencyKind,
    },
    /// Decide digital convexity and print the certificate.
    Convex { image: PathBuf },
    /// Canonical set of bounding curves.
    Bounding { image: PathBuf },
    /// Retraction of the superset Y onto the convex set X.
    Retract { x: PathBuf, y: PathBuf },
    /// Search for a continuous self-map without approximate fixed points.
    Afpp {
        image: PathBuf,
        #[arg(long, default_value = "c2")]
        adj: AdjacencyKind,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build F ∘ r for a convex disk Xp filling a hole of X.
    Construct {
        #[arg(long, num_args = 2, value_names = ["XP", "X"], required = true)]
        hole: Vec<PathBuf>,
        /// `reflect` or `shift:K`.
        #[arg(long, default_value = "reflect", value_parser = parse_map_choice)]
        map: MapChoice,
    },
    /// Built-in example images.
    Examples {
        which: Example,
        /// Directory to write the example files into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an image as a grid, or as SVG with optional overlays.
    Render {
        image: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Highlight the canonical bounding curves.
        #[arg(long)]
        curves: bool,
        /// Outline the convex hull.
        #[arg(long)]
        hull: bool,
        /// Draw arrows for a map table file.
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapChoice {
    Reflect,
    Shift(i64),
}

fn parse_map_choice(s: &str) -> std::result::Result<MapChoice, String> {
    if s == "reflect" {
        return Ok(MapChoice::Reflect);
    }
    s.strip_prefix("shift:")
        .and_then(|k| k.parse().ok())
        .map(MapChoice::Shift)
        .ok_or_else(|| format!("expected 'reflect' or 'shift:K', got '{s}'"))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Example {
    Fig1,
    Fig2,
    #[value(name = "ex3.6")]
    Ex36,
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) => EXIT_NO_INPUT,
            CliError::Core(e) => match e {
                Error::Precondition(_) | Error::NoBoundingCurve(_) | Error::NotClosedCurve(_) => EXIT_NEGATIVE,
                Error::Inconsistent(_) => EXIT_INTERNAL,
                _ => EXIT_DATA,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parse `args` (including the program name), execute, and print to `out`
/// or `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let printed = if cli.json {
                serde_json::to_string_pretty(&report.json).map(|s| s + "\n").unwrap_or_default()
            } else {
                report.text
            };
            if out.write_all(printed.as_bytes()).is_err() {
                return EXIT_INTERNAL;
            }
            report.code
        }
        Err(e) => {
            if cli.json {
                let doc = json!({ "error": e.to_string(), "exit_code": e.exit_code() });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
            }
            let _ = writeln!(err, "digitop: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> CliResult<Report> {
    match command {
        Command::Info { image, adj } => info(&read_image(image)?, *adj),
        Command::Convex { image } => convex(&read_image(image)?),
        Command::Bounding { image } => bounding(&read_image(image)?),
        Command::Retract { x, y } => retract(&read_image(x)?, &read_image(y)?),
        Command::Afpp { image, adj, budget } => afpp_command(&read_image(image)?, *adj, *budget),
        Command::Construct { hole, map } => construct(&read_image(&hole[0])?, &read_image(&hole[1])?, *map),
        Command::Examples { which, out } => examples(*which, out.as_deref()),
        Command::Render {
            image,
            svg,
            curves,
            hull,
            map,
        } => render(&read_image(image)?, svg.as_deref(), *curves, *hull, map.as_deref()),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn read_image(path: &Path) -> CliResult<PointSet<C>> {
    Ok(parse_image(&read_text(path)?)?)
}

fn info(set: &PointSet<C>, adj: AdjacencyKind) -> CliResult<Report> {
    let image = DigitalImage::new(set.clone(), adj);
    let comps = components(set, adj);
    let holes = if set.is_empty() {
        0
    } else {
        complement_components(set, adj.dual())?.finite().count()
    };
    let bounds = image.bounds();
    let mut text = String::new();
    let _ = writeln!(text, "points: {}", set.len());
    let _ = writeln!(text, "adjacency: {adj}");
    if let Some(b) = &bounds {
        let _ = writeln!(text, "bounds: {} .. {}", b.min, b.max);
    }
    let _ = writeln!(text, "connected: {}", is_connected(&image));
    let _ = writeln!(text, "components: {}", comps.len());
    let _ = writeln!(text, "holes ({} complement): {holes}", adj.dual());
    let json = json!({
        "points": set.len(),
        "adjacency": adj,
        "bounds": bounds.map(|b| json!({ "min": b.min, "max": b.max })),
        "connected": is_connected(&image),
        "components": comps.len(),
        "holes": holes,
    });
    Ok(Report { text, json, code: EXIT_OK })
}

fn convex(set: &PointSet<C>) -> CliResult<Report> {
    let verdict = is_digitally_convex(set)?;
    let saturated = is_hull_saturated(set)?;
    let mut text = String::new();
    match &verdict {
        Convexity::Point { point } => {
            let _ = writeln!(text, "convex: point {point}");
        }
        Convexity::Segment { segment } => {
            let _ = writeln!(
                text,
                "convex: segment {} .. {} ({:?})",
                segment.endpoints.0, segment.endpoints.1, segment.orientation
            );
        }
        Convexity::Disk { curve, segments, hull } => {
            let _ = writeln!(text, "convex: disk");
            let _ = writeln!(text, "bounding curve: {} points", curve.len());
            let _ = writeln!(text, "maximal segments: {}", segments.len());
            let ends: Vec<String> = segment_endpoints(segments).iter().map(ToString::to_string).collect();
            let _ = writeln!(text, "segment endpoints: {}", ends.join(" "));
            let verts: Vec<String> = hull.vertices.iter().map(ToString::to_string).collect();
            let _ = writeln!(text, "hull vertices: {}", verts.join(" "));
        }
        Convexity::NotConvex { violation } => {
            let condition = serde_json::to_value(violation)
                .ok()
                .and_then(|v| v.get("condition").and_then(Value::as_str).map(str::to_owned))
                .unwrap_or_default();
            let _ = writeln!(text, "not convex: {condition}");
        }
    }
    let _ = writeln!(text, "hull saturated: {saturated}");
    let json = json!({ "convexity": verdict, "hull_saturated": saturated });
    let code = if verdict.is_convex() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Report { text, json, code })
}

fn curve_text(text: &mut String, index: usize, curve: &Curve<C>) {
    let role = if index == 0 { "outer" } else { "hole" };
    let _ = writeln!(text, "curve {} ({role}): {} points", index + 1, curve.len());
    text.push_str(&format_point_list(curve.points()));
}

fn bounding(set: &PointSet<C>) -> CliResult<Report> {
    let curves = canonical_bounding_curves(set)?;
    let mut text = String::new();
    for (i, c) in curves.curves.iter().enumerate() {
        curve_text(&mut text, i, c);
    }
    let json = json!({ "curves": curves.curves });
    Ok(Report { text, json, code: EXIT_OK })
}

fn retract(x: &PointSet<C>, y: &PointSet<C>) -> CliResult<Report> {
    let case = is_digitally_convex(x)?;
    let (map, certificate) = match case {
        Convexity::Disk { .. } => {
            let (map, cert) = convex_disk_retraction(x, y)?;
            (map, Some(cert))
        }
        _ => (convex_retraction(x, y)?, None),
    };
    let mut text = String::new();
    let _ = writeln!(text, "# target case: {}", case.case_name());
    if let Some(c) = &certificate {
        let _ = writeln!(
            text,
            "# m = {}, M = {}, s0 = {}, s1 = {}, s2 = {}, s3 = {}",
            c.min_x, c.max_x, c.left_low, c.left_high, c.right_low, c.right_high
        );
    }
    text.push_str(&format_map_table(&map));
    let json = json!({ "case": case.case_name(), "certificate": certificate, "map": map });
    Ok(Report { text, json, code: EXIT_OK })
}

fn afpp_command(set: &PointSet<C>, adj: AdjacencyKind, budget: u64) -> CliResult<Report> {
    let image = DigitalImage::new(set.clone(), adj);
    let report = afpp::decide_afpp(&image, budget)?;
    let decision = if report.lacks_afpp() {
        "LACKS_AFPP"
    } else if report.has_afpp() {
        "HAS_AFPP"
    } else {
        "UNKNOWN"
    };
    let v = &report.verdict;
    let mut text = String::new();
    let _ = writeln!(text, "decision: {decision}");
    let _ = writeln!(text, "search: {} ({} of {} nodes)", v.outcome.name(), v.nodes_explored, v.budget);
    if let Some(w) = &v.witness {
        let _ = writeln!(text, "witness (search):");
        text.push_str(&format_map_table(w));
    }
    if let Some(c) = &report.constructed {
        let _ = writeln!(text, "witness (constructed, curve map {}):", curve_map_name(&c.curve_map));
        text.push_str(&format_map_table(&c.map));
    }
    let json = json!({
        "decision": decision,
        "search": v,
        "constructed": report.constructed,
    });
    let code = match decision {
        "LACKS_AFPP" => EXIT_NEGATIVE,
        "HAS_AFPP" => EXIT_OK,
        _ => EXIT_UNKNOWN,
    };
    Ok(Report { text, json, code })
}

fn curve_map_name(m: &CurveMap<C>) -> String {
    match m {
        CurveMap::Reflect { center2 } => format!("reflect about ({}, {})/2", center2.0, center2.1),
        CurveMap::Shift { k } => format!("shift:{k}"),
    }
}

fn construct(xp: &PointSet<C>, x: &PointSet<C>, choice: MapChoice) -> CliResult<Report> {
    // The reflection center comes from the disk's own bounding curve.
    let curve_map = match choice {
        MapChoice::Reflect => {
            let curve = digitop_core::curves::trace_bounding_curve(xp)?;
            CurveMap::Reflect {
                center2: box_center2(&curve),
            }
        }
        MapChoice::Shift(k) => CurveMap::Shift { k },
    };
    let w = afpp::construct_with(x, xp, curve_map)?;
    let afps = afpp::approximate_fixed_points(&w.map)?;
    let mut text = String::new();
    let _ = writeln!(text, "# curve map: {}", curve_map_name(&w.curve_map));
    let _ = writeln!(text, "# approximate fixed points: {}", afps.len());
    text.push_str(&format_map_table(&w.map));
    let json = json!({ "witness": w, "approximate_fixed_points": afps });
    Ok(Report { text, json, code: EXIT_OK })
}

fn examples(which: Example, out: Option<&Path>) -> CliResult<Report> {
    let mut files: Vec<(String, String)> = Vec::new();
    let mut text = String::new();
    let json = match which {
        Example::Fig1 => {
            let x = fixtures::octagon_disk::<C>();
            let y = fixtures::octagon_frame::<C>();
            let (r, cert) = convex_disk_retraction(&x, &y)?;
            let curves = [cert.curve.clone()];
            let svg = render_svg(
                &y,
                Overlays {
                    arrows: Some(&r),
                    curves: &curves,
                    hull: None,
                },
            )?;
            let _ = writeln!(text, "X: {} points, Y: {} points", x.len(), y.len());
            let _ = writeln!(
                text,
                "s0 = {}, s1 = {}, s2 = {}, s3 = {}",
                cert.left_low, cert.left_high, cert.right_low, cert.right_high
            );
            files.push(("fig1_x.grid".into(), format_image(&x)));
            files.push(("fig1_y.grid".into(), format_image(&y)));
            files.push(("fig1.map".into(), format_map_table(&r)));
            files.push(("fig1.svg".into(), svg));
            json!({ "example": "fig1", "x_points": x.len(), "y_points": y.len(), "certificate": cert })
        }
        Example::Fig2 => {
            let x = fixtures::holed_square::<C>();
            let svg = render_svg(&x, Overlays::default())?;
            let _ = writeln!(text, "X: {} points", x.len());
            files.push(("fig2.grid".into(), format_image(&x)));
            files.push(("fig2.svg".into(), svg));
            json!({ "example": "fig2", "points": x.len() })
        }
        Example::Ex36 => {
            let ex = afpp::reflected_hole_example::<C>();
            let x = ex.image.points();
            let afps = afpp::approximate_fixed_points(&ex.map)?;
            let curves = [ex.curve.clone()];
            let svg = render_svg(
                x,
                Overlays {
                    arrows: Some(&ex.map),
                    curves: &curves,
                    hull: None,
                },
            )?;
            let _ = writeln!(text, "X: {} points (c2)", x.len());
            let _ = writeln!(text, "f = F o r continuous: {}", ex.map.is_continuous());
            let _ = writeln!(text, "approximate fixed points of f: {}", afps.len());
            files.push(("ex3_6.grid".into(), format_image(x)));
            files.push(("ex3_6.map".into(), format_map_table(&ex.map)));
            files.push(("ex3_6.svg".into(), svg));
            json!({
                "example": "ex3.6",
                "points": x.len(),
                "continuous": ex.map.is_continuous(),
                "approximate_fixed_points": afps,
                "map": ex.map,
            })
        }
    };
    let mut json = json;
    json["files"] = json!(files.iter().map(|(name, _)| name).collect::<Vec<_>>());
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
            for (name, body) in &files {
                write_text(&dir.join(name), body)?;
                let _ = writeln!(text, "wrote {name}");
            }
        }
        None => {
            // Without an output directory, show the image grid.
            if let Some((_, grid)) = files.first() {
                text.push_str(grid);
            }
        }
    }
    Ok(Report { text, json, code: EXIT_OK })
}

fn read_map(path: &Path, fallback_codomain: &PointSet<C>) -> CliResult<PointMap<C>> {
    let table = parse_map_table::<C>(&read_text(path)?)?;
    let domain: PointSet<C> = table.keys().copied().collect();
    let mut codomain: PointSet<C> = fallback_codomain.clone();
    codomain.extend(table.values().copied());
    Ok(PointMap::new(
        DigitalImage::new(domain, AdjacencyKind::C2),
        DigitalImage::new(codomain, AdjacencyKind::C2),
        table,
    )?)
}

fn render(
    set: &PointSet<C>,
    svg: Option<&Path>,
    with_curves: bool,
    with_hull: bool,
    map: Option<&Path>,
) -> CliResult<Report> {
    let Some(path) = svg else {
        let grid = format_image(set);
        let json = json!({ "grid": grid, "points": set });
        return Ok(Report {
            text: grid,
            json,
            code: EXIT_OK,
        });
    };
    let curves = if with_curves {
        canonical_bounding_curves(set)?.curves
    } else {
        Vec::new()
    };
    let hull = if with_hull { Some(convex_hull(set)?) } else { None };
    let arrows = map.map(|m| read_map(m, set)).transpose()?;
    let doc = render_svg(
        set,
        Overlays {
            arrows: arrows.as_ref(),
            curves: &curves,
            hull: hull.as_ref(),
        },
    )?;
    write_text(path, &doc)?;
    let text = format!("wrote {}\n", path.display());
    let json = json!({ "svg": path.display().to_string(), "bytes": doc.len() });
    Ok(Report { text, json, code: EXIT_OK })
}
