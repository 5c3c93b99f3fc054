//! `mixfv` command-line driver. Exit codes: 0 success, 1 runtime failure,
//! 2 usage error.

mod args;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use mixfv::diagnostics::{self, REFERENCE_CELLS};
use mixfv::{cases, io, solver, CaseSpec, EndTime, Error, Run, RunOverrides, SchemeKind};

use args::{CaseSource, Cli, Command, Common, Format, ReferenceArgs, RunArgs, SweepArgs};

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Outcome<()> {
    match command {
        Command::Run(a) => run(&a),
        Command::Sweep(a) => sweep(&a),
        Command::Reference(a) => reference(&a),
        Command::ListCases => {
            for name in cases::case_names() {
                println!("{name}");
            }
            Ok(())
        }
        Command::ListSchemes => {
            for k in SchemeKind::ALL {
                println!("{k}");
            }
            Ok(())
        }
        Command::ShowCase { case } => {
            print!("{}", registered(&case)?.to_toml()?);
            Ok(())
        }
    }
}

fn registered(name: &str) -> Outcome<CaseSpec> {
    cases::get_case(name).map_err(|e| match e {
        Error::UnknownCase { .. } => Failure::Usage(e.to_string()),
        other => Failure::Runtime(other),
    })
}

/// The selected case with an end-time override folded in. An overridden
/// end time renames the case so its references are cached separately.
fn load_case(source: &CaseSource, t_end: Option<f64>) -> Outcome<CaseSpec> {
    let mut case = match (&source.case, &source.case_file) {
        (Some(name), _) => registered(name)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })?;
            CaseSpec::from_toml(&text).map_err(|e| Error::Parse {
                path: path.clone(),
                reason: e.to_string(),
            })?
        }
        (None, None) => return Err(Failure::Usage("one of --case or --case-file is required".into())),
    };
    if let Some(t) = t_end {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!(
                "--t-end must be a non-negative number, got {t}"
            )));
        }
        case.t_end = EndTime::Time(t);
        case.name = format!("{}_t{t}", case.name);
    }
    Ok(case)
}

fn check_scheme(case: &CaseSpec, scheme: SchemeKind) -> Outcome<()> {
    let model = case.build_model()?;
    scheme.check_model(&model).map_err(|e| Failure::Usage(e.to_string()))
}

fn create_parent(path: &Path) -> Outcome<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => fs::create_dir_all(dir).map_err(|e| {
            Failure::Runtime(Error::Io {
                path: dir.to_path_buf(),
                source: e,
            })
        }),
        _ => Ok(()),
    }
}

fn check_cells(case: &CaseSpec, cells: &[usize]) -> Outcome<()> {
    if cells.len() != case.dims {
        let form = if case.dims == 1 { "N" } else { "NXxNY" };
        return Err(Failure::Usage(format!(
            "case '{}' is {}D; give --cells as {form}",
            case.name, case.dims
        )));
    }
    Ok(())
}

/// Where one run writes its files.
#[derive(Debug)]
struct Outputs {
    format: Format,
    main: PathBuf,
    /// Midline CSV written next to a 2D VTK file.
    slice_csv: Option<PathBuf>,
    metrics: Option<PathBuf>,
}

fn plan_outputs(dims: usize, common: &Common, out: PathBuf, format: Format) -> Outcome<Outputs> {
    match (dims, format, common.slice) {
        (1, Format::Vtk, _) => return Err(Failure::Usage("VTK output needs a 2D case".into())),
        (1, _, Some(_)) => return Err(Failure::Usage("--slice applies to 2D cases only".into())),
        (2, Format::Csv, None) => return Err(Failure::Usage("CSV output of a 2D case needs --slice y=VALUE".into())),
        _ => {}
    }
    let stem = out.with_extension("");
    let sibling = |suffix: &str| {
        let mut name = stem.file_name().unwrap_or_default().to_os_string();
        name.push(suffix);
        stem.with_file_name(name)
    };
    Ok(Outputs {
        format,
        slice_csv: (format == Format::Vtk && common.slice.is_some()).then(|| sibling("_slice.csv")),
        metrics: common.metrics.then(|| sibling(".metrics")),
        main: out,
    })
}

fn format_for(common: &Common, out: Option<&Path>) -> Format {
    common.format.unwrap_or_else(|| match out.and_then(|p| p.extension()) {
        Some(ext) if ext.eq_ignore_ascii_case("vtk") => Format::Vtk,
        _ => Format::Csv,
    })
}

fn execute(
    case: &CaseSpec,
    scheme: SchemeKind,
    cells: Option<Vec<usize>>,
    common: &Common,
    outs: &Outputs,
) -> Outcome<Run> {
    let ov = RunOverrides {
        cells,
        cfl: common.cfl,
        ..Default::default()
    };
    create_parent(&outs.main)?;
    let run = if let Some(path) = &outs.metrics {
        let reference = match (case.dims, case.t_end) {
            (1, EndTime::Time(_)) => {
                let cached = diagnostics::reference_cache_path(&common.ref_cache, case, REFERENCE_CELLS);
                if !cached.exists() {
                    eprintln!("building {REFERENCE_CELLS}-cell reference for {} ...", case.name);
                }
                Some(diagnostics::generate_reference(
                    case,
                    REFERENCE_CELLS,
                    Some(&common.ref_cache),
                )?)
            }
            _ => None,
        };
        let (run, metrics) = diagnostics::run_with_metrics(case, scheme, &ov, reference.as_ref())?;
        diagnostics::write_metrics(&metrics, path)?;
        run
    } else {
        solver::run_observed(case, scheme, &ov, |_, _| {})?
    };
    match outs.format {
        Format::Csv => io::write_csv(&run.field, common.slice, &outs.main)?,
        Format::Vtk => io::write_vtk(&run.field, &outs.main)?,
    }
    if let Some(path) = &outs.slice_csv {
        io::write_csv(&run.field, common.slice, path)?;
    }
    Ok(run)
}

fn describe(case: &CaseSpec, run: &Run, outs: &Outputs) -> String {
    let g = &run.field.grid;
    let cells = if g.dims == 1 {
        g.nx().to_string()
    } else {
        format!("{}x{}", g.nx(), g.ny())
    };
    let mut files = vec![outs.main.display().to_string()];
    files.extend(outs.slice_csv.iter().map(|p| p.display().to_string()));
    files.extend(outs.metrics.iter().map(|p| p.display().to_string()));
    format!(
        "{} {} {cells} cells: {} steps to t = {} ({:?}) -> {}",
        case.name,
        run.scheme,
        run.steps,
        run.time,
        run.status,
        files.join(", ")
    )
}

fn cells_label(cells: &[usize]) -> String {
    cells.iter().map(usize::to_string).collect::<Vec<_>>().join("x")
}

fn run(a: &RunArgs) -> Outcome<()> {
    let case = load_case(&a.source, a.common.t_end)?;
    let cells = a.cells.clone().map_or_else(|| case.cells.clone(), |c| c.0);
    check_cells(&case, &cells)?;
    check_scheme(&case, a.scheme)?;
    let format = format_for(&a.common, a.out.as_deref());
    let out = a
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}_{}.{}", case.name, a.scheme, format.extension())));
    let outs = plan_outputs(case.dims, &a.common, out, format)?;
    let run = execute(&case, a.scheme, Some(cells), &a.common, &outs)?;
    println!("{}", describe(&case, &run, &outs));
    Ok(())
}

fn sweep(a: &SweepArgs) -> Outcome<()> {
    let case = load_case(&a.source, a.common.t_end)?;
    let format = format_for(&a.common, None);
    let mut plans = Vec::new();
    for &scheme in &a.schemes {
        check_scheme(&case, scheme)?;
        for args::Cells(cells) in &a.cells {
            check_cells(&case, cells)?;
            let name = format!("{}_{scheme}_{}.{}", case.name, cells_label(cells), format.extension());
            let outs = plan_outputs(case.dims, &a.common, a.out_dir.join(name), format)?;
            plans.push((scheme, cells.clone(), outs));
        }
    }
    let mut failed = 0;
    for (scheme, cells, outs) in &plans {
        match execute(&case, *scheme, Some(cells.clone()), &a.common, outs) {
            Ok(run) => println!("{}", describe(&case, &run, outs)),
            Err(Failure::Runtime(e)) => {
                failed += 1;
                eprintln!("{} {scheme} {} cells: error: {e}", case.name, cells_label(cells));
            }
            Err(usage) => return Err(usage),
        }
    }
    if failed > 0 {
        return Err(Failure::Runtime(Error::Config(format!(
            "{failed} of {} sweep runs failed",
            plans.len()
        ))));
    }
    Ok(())
}

fn reference(a: &ReferenceArgs) -> Outcome<()> {
    let case = load_case(&a.source, a.t_end)?;
    if case.dims != 1 {
        return Err(Failure::Usage(format!(
            "references are built for 1D cases; '{}' is 2D",
            case.name
        )));
    }
    let r = diagnostics::generate_reference(&case, a.cells, Some(&a.ref_cache))?;
    let path = diagnostics::reference_cache_path(&a.ref_cache, &case, a.cells);
    if let Some(out) = &a.out {
        fs::copy(&path, out).map_err(|e| Error::Io {
            path: out.clone(),
            source: e,
        })?;
    }
    println!("{} reference, {} cells -> {}", r.case, r.cells, path.display());
    Ok(())
}
