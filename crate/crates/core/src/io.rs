//! Field output: CSV profiles, legacy VTK and flat metric files.
//!
//! Every number is printed with 17 significant digits so a rerun of the same
//! configuration reproduces files byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::solver::{Field, Grid};
use crate::state::{Composition, ModelKind};

pub(crate) fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Row whose cell extent contains `y`.
pub fn slice_row(grid: &Grid, y: f64) -> Result<usize> {
    if grid.dims != 2 {
        return Err(Error::Config("slices need a 2D grid".into()));
    }
    if !(0.0..=grid.extent[1]).contains(&y) {
        return Err(Error::Config(format!(
            "slice y = {y} lies outside [0, {}]",
            grid.extent[1]
        )));
    }
    Ok(((y / grid.dx[1]).floor() as usize).min(grid.ny() - 1))
}

pub fn csv_header(kind: ModelKind, dims: usize) -> Vec<&'static str> {
    let mut h = vec!["x", "rho", "u"];
    if dims == 2 {
        h.push("v");
    }
    h.push("p");
    match kind {
        ModelKind::MassFraction => h.push("Y"),
        ModelKind::GammaBased => h.extend(["gamma", "p_inf"]),
    }
    h
}

/// CSV profile of a 1D field, or of the row at `slice_y` of a 2D field.
pub fn csv_string(field: &Field, slice_y: Option<f64>) -> Result<String> {
    let g = &field.grid;
    let row = match (g.dims, slice_y) {
        (1, None) => 0,
        (1, Some(_)) => return Err(Error::Config("slices apply to 2D fields only".into())),
        (_, Some(y)) => slice_row(g, y)?,
        (_, None) => return Err(Error::Config("2D CSV output needs a slice, e.g. y=0.5".into())),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Config(format!("CSV encoding failed: {e}"));
    w.write_record(csv_header(field.model.kind, g.dims)).map_err(csv_err)?;
    for i in 0..g.nx() {
        let n = g.index(i, row);
        let p = field.primitive(n)?;
        let mut rec = vec![num(g.center(i, row)[0]), num(p.rho), num(p.vel[0])];
        if g.dims == 2 {
            rec.push(num(p.vel[1]));
        }
        rec.push(num(p.p));
        match p.comp {
            Composition::MassFraction { y1 } => rec.push(num(y1)),
            Composition::Gamma { gamma, p_inf } => rec.extend([num(gamma), num(p_inf)]),
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Config(format!("CSV encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is ASCII"))
}

pub fn write_csv(field: &Field, slice_y: Option<f64>, path: &Path) -> Result<()> {
    let text = csv_string(field, slice_y)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// A numeric CSV table as written by [`write_csv`].
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

pub fn read_csv(path: &Path) -> Result<CsvTable> {
    let parse_err = |reason: String| Error::Parse {
        path: path.to_path_buf(),
        reason,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => parse_err(format!("{other:?}")),
    })?;
    let header: Vec<String> = r
        .headers()
        .map_err(|e| parse_err(e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| parse_err(e.to_string()))?;
        let row = rec
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_err(format!("row {}: {e}", line + 2)))?;
        rows.push(row);
    }
    Ok(CsvTable { header, rows })
}

/// One scalar cell array of the VTK output.
type Column = fn(&crate::state::Primitive) -> f64;

/// Legacy ASCII VTK, structured points with cell data.
pub fn vtk_string(field: &Field) -> Result<String> {
    let g = &field.grid;
    if g.dims != 2 {
        return Err(Error::Config("VTK output needs a 2D field".into()));
    }
    let prims = field.primitives()?;
    let mut s = String::new();
    let _ = writeln!(s, "# vtk DataFile Version 3.0");
    let _ = writeln!(s, "mixfv {} field", field.model.kind);
    let _ = writeln!(s, "ASCII");
    let _ = writeln!(s, "DATASET STRUCTURED_POINTS");
    let _ = writeln!(s, "DIMENSIONS {} {} 1", g.nx() + 1, g.ny() + 1);
    let _ = writeln!(s, "ORIGIN 0 0 0");
    let _ = writeln!(s, "SPACING {} {} {}", num(g.dx[0]), num(g.dx[1]), num(g.dx[0]));
    let _ = writeln!(s, "CELL_DATA {}", g.len());
    let last = match field.model.kind {
        ModelKind::MassFraction => "Y",
        ModelKind::GammaBased => "gamma",
    };
    let columns: [(&str, Column); 5] = [
        ("rho", |p| p.rho),
        ("p", |p| p.p),
        ("u", |p| p.vel[0]),
        ("v", |p| p.vel[1]),
        (last, |p| match p.comp {
            Composition::MassFraction { y1 } => y1,
            Composition::Gamma { gamma, .. } => gamma,
        }),
    ];
    for (name, get) in columns {
        let _ = writeln!(s, "SCALARS {name} double 1");
        let _ = writeln!(s, "LOOKUP_TABLE default");
        for p in &prims {
            let _ = writeln!(s, "{}", num(get(p)));
        }
    }
    Ok(s)
}

pub fn write_vtk(field: &Field, path: &Path) -> Result<()> {
    let text = vtk_string(field)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{Model, Primitive};
    use crate::thermo::GasComponent;

    fn gb2(nx: usize, ny: usize) -> Field {
        let m = Model::new(
            ModelKind::GammaBased,
            2,
            GasComponent::perfect(1.4),
            GasComponent::perfect(1.4),
        )
        .unwrap();
        let g = Grid::two_d([1.0, 1.0], [nx, ny]).unwrap();
        Field::uniform(m, g, &Primitive::gamma_based(1.0, 0.5, 1.0, 1.4, 0.0)).unwrap()
    }

    #[test]
    fn uniform_1d_csv_has_header_and_one_row_per_cell() {
        let m = Model::new(
            ModelKind::MassFraction,
            1,
            GasComponent::perfect(1.4),
            GasComponent::perfect(1.6),
        )
        .unwrap();
        let f = Field::uniform(
            m,
            Grid::one_d(1.0, 3).unwrap(),
            &Primitive::mass_fraction(1.0, 0.0, 1.0, 1.0),
        )
        .unwrap();
        let s = csv_string(&f, None).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "x,rho,u,p,Y");
        assert!(
            lines[1].starts_with("1.6666666666666666e-1,1.0000000000000000e0,"),
            "{}",
            lines[1]
        );
    }

    #[test]
    fn slice_rows() {
        let g = Grid::two_d([1.0, 1.0], [100, 100]).unwrap();
        assert_eq!(slice_row(&g, 0.5).unwrap(), 50);
        assert_eq!(slice_row(&g, 0.0).unwrap(), 0);
        assert_eq!(slice_row(&g, 1.0).unwrap(), 99);
        assert_eq!(slice_row(&g, 0.123).unwrap(), 12);
        assert!(slice_row(&g, 1.5).is_err());
    }

    #[test]
    fn csv_2d_needs_slice_and_adds_v() {
        let f = gb2(4, 4);
        assert!(csv_string(&f, None).is_err());
        let s = csv_string(&f, Some(0.5)).unwrap();
        assert_eq!(s.lines().next().unwrap(), "x,rho,u,v,p,gamma,p_inf");
        assert_eq!(s.lines().count(), 5);
    }

    #[test]
    fn csv_read_back() {
        let f = gb2(5, 3);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.csv");
        write_csv(&f, Some(0.5), &path).unwrap();
        let t = read_csv(&path).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert_eq!(t.column("u").unwrap(), vec![0.5; 5]);
        assert!(t.column("Y").is_none());
        let err = read_csv(&dir.path().join("missing.csv")).unwrap_err();
        assert!(err.to_string().contains("missing.csv"), "{err}");
    }

    #[test]
    fn vtk_layout() {
        // grids need at least 3 cells per axis, so the smallest case is 3×3
        let s = vtk_string(&gb2(3, 3)).unwrap();
        assert!(s.contains("DIMENSIONS 4 4 1\n"));
        assert!(s.contains("CELL_DATA 9\n"));
        let s43 = vtk_string(&gb2(4, 3)).unwrap();
        assert!(s43.contains("DIMENSIONS 5 4 1\n") && s43.contains("CELL_DATA 12\n"));
        let names: Vec<_> = s
            .lines()
            .filter_map(|l| l.strip_prefix("SCALARS "))
            .map(|l| l.split_whitespace().next().unwrap())
            .collect();
        assert_eq!(names, ["rho", "p", "u", "v", "gamma"]);
        let m = Model::new(
            ModelKind::MassFraction,
            1,
            GasComponent::perfect(1.4),
            GasComponent::perfect(1.6),
        )
        .unwrap();
        let f = Field::uniform(
            m,
            Grid::one_d(1.0, 3).unwrap(),
            &Primitive::mass_fraction(1.0, 0.0, 1.0, 1.0),
        )
        .unwrap();
        assert!(vtk_string(&f).is_err());
    }
}
