//! Samples CSV: one row per averaging domain.
//!
//! ```text
//! kind,c1,e1,value
//! segment,0.0,0.25,0.9
//! box,0.0,1.0,0.5,0.5,0.3
//! ball,0.0,1.0,0.5,0.7
//! ```
//!
//! A header row (first field `kind`) is optional. Box rows list all centers,
//! then all half-widths; ball rows list the centers and a single radius.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::{AverageSample, Domain, DomainKind, HistoProblem};
use crate::error::{Error, Result};
use crate::io::fmt_float;

fn parse_error(path: &Path, row: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        row,
        message: message.into(),
    }
}

/// Reads samples from any reader; `path` is only used in error messages.
pub fn read_samples<R: Read>(reader: R, path: &Path) -> Result<HistoProblem> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut samples = Vec::new();
    for (k, record) in rdr.records().enumerate() {
        let record = record?;
        let row = record.position().map_or(k + 1, |p| p.line() as usize);
        let kind = record.get(0).unwrap_or("");
        if k == 0 && kind.eq_ignore_ascii_case("kind") {
            continue;
        }
        if record.len() == 1 && kind.is_empty() {
            continue;
        }
        let nums = record
            .iter()
            .skip(1)
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| parse_error(path, row, format!("`{f}` is not a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let (&value, geom) = nums
            .split_last()
            .ok_or_else(|| parse_error(path, row, "missing value column"))?;
        let domain = match kind {
            "segment" => {
                if geom.len() != 2 {
                    return Err(parse_error(path, row, "segment rows need center, half-width, value"));
                }
                Domain::segment(geom[0], geom[1])
            }
            "box" => {
                if geom.is_empty() || geom.len() % 2 != 0 {
                    return Err(parse_error(path, row, "box rows need d centers, d half-widths, value"));
                }
                let d = geom.len() / 2;
                Domain::boxed(geom[..d].to_vec(), geom[d..].to_vec())
            }
            "ball" => {
                if geom.len() < 2 {
                    return Err(parse_error(path, row, "ball rows need d centers, radius, value"));
                }
                let d = geom.len() - 1;
                Domain::ball(geom[..d].to_vec(), geom[d])
            }
            other => return Err(parse_error(path, row, format!("unknown domain kind `{other}`"))),
        }
        .map_err(|e| parse_error(path, row, e.to_string()))?;
        let sample = AverageSample::new(domain, value).map_err(|e| parse_error(path, row, e.to_string()))?;
        samples.push(sample);
    }
    if samples.is_empty() {
        return Err(Error::validation(format!("{}: no samples", path.display())));
    }
    HistoProblem::new(samples)
}

pub fn load_samples(path: impl AsRef<Path>) -> Result<HistoProblem> {
    let path = path.as_ref();
    read_samples(File::open(path)?, path)
}

/// Writes samples with 17 significant digits, which round-trips exactly.
pub fn write_samples<W: Write>(problem: &HistoProblem, writer: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().flexible(true).from_writer(writer);
    let d = problem.dim();
    let kinds: Vec<DomainKind> = problem.domains().map(|dom| dom.kind()).collect();
    let mut header = vec!["kind".to_string()];
    header.extend((1..=d).map(|k| format!("c{k}")));
    if kinds.iter().all(|&k| k == DomainKind::Ball) {
        header.push("r".into());
    } else {
        header.extend((1..=d).map(|k| format!("e{k}")));
    }
    header.push("value".into());
    wtr.write_record(&header)?;
    for s in problem.samples() {
        let mut rec = vec![s.domain.kind().as_str().to_string()];
        rec.extend(s.domain.center().iter().map(|v| fmt_float(*v)));
        rec.extend(s.domain.extent().iter().map(|v| fmt_float(*v)));
        rec.push(fmt_float(s.value));
        wtr.write_record(&rec)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn save_samples(problem: &HistoProblem, path: impl AsRef<Path>) -> Result<()> {
    let path: PathBuf = path.as_ref().to_path_buf();
    write_samples(problem, File::create(&path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn read(text: &str) -> Result<HistoProblem> {
        read_samples(text.as_bytes(), Path::new("mem.csv"))
    }

    #[test]
    fn single_segment_row() {
        let p = read("segment,0.0,0.25,0.9\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.domain(0), &Domain::segment(0.0, 0.25).unwrap());
        assert_eq!(p.values(), vec![0.9]);
    }

    #[test]
    fn header_and_mixed_kinds() {
        let p = read("kind,c1,c2,e1,e2,value\nbox,0,1,0.5,0.5,0.3\nball,2,2,0.5,0.7\n").unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.domain(1).radius(), Some(0.5));
    }

    #[test]
    fn errors_carry_row_numbers() {
        assert!(read("").unwrap_err().is_validation());
        match read("segment,0,0.5,1\nsegment,1,x,2\n").unwrap_err() {
            Error::Parse { row, .. } => assert_eq!(row, 2),
            other => panic!("{other:?}"),
        }
        match read("segment,0,0.5,1\nbox,0,0,1,1,2\n").unwrap_err() {
            Error::DimensionMismatch { .. } => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(read("triangle,0,1,2\n"), Err(Error::Parse { row: 1, .. })));
        assert!(matches!(read("segment,0,-1,2\n"), Err(Error::Parse { row: 1, .. })));
    }

    #[test]
    fn round_trip_three_samples() {
        let p = HistoProblem::uniform_segments(&[-1.0, 0.1, 0.7], 0.3, &[0.25, -1.0 / 3.0, 1e-300]).unwrap();
        let mut buf = Vec::new();
        write_samples(&p, &mut buf).unwrap();
        assert_eq!(read(std::str::from_utf8(&buf).unwrap()).unwrap(), p);
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("s.csv");
        save_samples(&p, &file).unwrap();
        assert_eq!(load_samples(&file).unwrap(), p);
    }

    proptest! {
        #[test]
        fn round_trip_random_balls(
            pts in proptest::collection::vec((-10.0..10.0f64, -10.0..10.0f64, 0.01..3.0f64, -1e3..1e3f64), 1..8)
        ) {
            let mut samples = Vec::new();
            for (x, y, r, v) in pts {
                let d = Domain::ball(vec![x, y], r).unwrap();
                if samples.iter().any(|s: &AverageSample| s.domain == d) {
                    continue;
                }
                samples.push(AverageSample::new(d, v).unwrap());
            }
            let p = HistoProblem::new(samples).unwrap();
            let mut buf = Vec::new();
            write_samples(&p, &mut buf).unwrap();
            prop_assert_eq!(read(std::str::from_utf8(&buf).unwrap()).unwrap(), p);
        }
    }
}
