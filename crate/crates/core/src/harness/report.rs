use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ising::{energies_equal, io::format_energy};

/// Energies of one case, all evaluated under the base problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRecord {
    pub case_index: usize,
    /// Best raw sample of the unit-scale hardware run.
    pub e_dw: f64,
    /// MQC reduction of the unit-scale hardware run.
    pub e_m: f64,
    /// HPE answer.
    pub e_h: f64,
    /// Exhaustive ground-state energy, for small problems.
    pub e_exact: Option<f64>,
}

/// One line of a results table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub bp: String,
    pub hp: String,
    pub cases: usize,
    pub samples: Option<usize>,
    pub n_dw_lt_h: usize,
    pub n_m_lt_h: usize,
    pub n_m_eq_h: usize,
    pub n_h_lt_m: usize,
}

/// Labels attached to an aggregated row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowLabels {
    pub bp: String,
    pub hp: String,
    pub samples: Option<usize>,
}

/// Counts win/tie/loss outcomes. `m = h` when the two energies agree to
/// relative tolerance `rel_tol`; `dw < h` is counted only when strictly
/// below and not tolerance-equal.
pub fn aggregate(records: &[ComparisonRecord], labels: RowLabels, rel_tol: f64) -> Result<TableRow> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let mut row = TableRow {
        bp: labels.bp,
        hp: labels.hp,
        cases: records.len(),
        samples: labels.samples,
        n_dw_lt_h: 0,
        n_m_lt_h: 0,
        n_m_eq_h: 0,
        n_h_lt_m: 0,
    };
    for r in records {
        if r.e_dw < r.e_h && !energies_equal(r.e_dw, r.e_h, rel_tol) {
            row.n_dw_lt_h += 1;
        }
        if energies_equal(r.e_m, r.e_h, rel_tol) {
            row.n_m_eq_h += 1;
        } else if r.e_m < r.e_h {
            row.n_m_lt_h += 1;
        } else {
            row.n_h_lt_m += 1;
        }
    }
    Ok(row)
}

/// Markdown table with columns `BP | HP | Cases | Samples | dw<h | m<h | m=h | h<m`.
pub fn emit_table(rows: &[TableRow]) -> String {
    let mut out = String::from("| BP | HP | Cases | Samples | dw<h | m<h | m=h | h<m |\n");
    out.push_str("|----|----|-------|---------|------|-----|-----|-----|\n");
    for r in rows {
        let samples = r.samples.map_or_else(|| "-".to_string(), |s| s.to_string());
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            r.bp, r.hp, r.cases, samples, r.n_dw_lt_h, r.n_m_lt_h, r.n_m_eq_h, r.n_h_lt_m
        )
        .unwrap();
    }
    out
}

const CSV_HEADER: [&str; 5] = ["case_index", "e_dw", "e_m", "e_h", "e_exact"];

/// Writes records as CSV (`case_index,e_dw,e_m,e_h,e_exact`), energies with
/// 17 significant digits and `e_exact` blank when absent.
pub fn emit_csv(records: &[ComparisonRecord], path: &Path) -> Result<()> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.case_index.to_string(),
            format_energy(r.e_dw),
            format_energy(r.e_m),
            format_energy(r.e_h),
            r.e_exact.map(format_energy).unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_csv(path: &Path) -> Result<Vec<ComparisonRecord>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let format_err = |message: String| Error::Format {
        path: path.to_path_buf(),
        message,
    };
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let header = reader.headers().map_err(csv_err)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(format_err(format!(
            "expected header `{}`, found `{}`",
            CSV_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let energy = |k: usize| -> Result<f64> {
            rec[k]
                .parse::<f64>()
                .map_err(|_| format_err(format!("`{}` is not a number", &rec[k])))
        };
        out.push(ComparisonRecord {
            case_index: rec[0]
                .parse()
                .map_err(|_| format_err(format!("`{}` is not a case index", &rec[0])))?,
            e_dw: energy(1)?,
            e_m: energy(2)?,
            e_h: energy(3)?,
            e_exact: if rec[4].is_empty() { None } else { Some(energy(4)?) },
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(e_dw: f64, e_m: f64, e_h: f64) -> ComparisonRecord {
        ComparisonRecord {
            case_index: 0,
            e_dw,
            e_m,
            e_h,
            e_exact: None,
        }
    }

    fn labels() -> RowLabels {
        RowLabels {
            bp: "9".into(),
            hp: "3".into(),
            samples: Some(200),
        }
    }

    #[test]
    fn all_ties() {
        let rows = vec![rec(-3.0, -4.0, -4.0); 5];
        let row = aggregate(&rows, labels(), 1e-12).unwrap();
        assert_eq!((row.n_dw_lt_h, row.n_m_lt_h, row.n_m_eq_h, row.n_h_lt_m), (0, 0, 5, 0));
        assert_eq!(row.cases, 5);
    }

    #[test]
    fn single_hpe_win() {
        let row = aggregate(&[rec(-3.0, -3.5, -4.0)], labels(), 1e-12).unwrap();
        assert_eq!((row.n_dw_lt_h, row.n_m_lt_h, row.n_m_eq_h, row.n_h_lt_m), (0, 0, 0, 1));
    }

    #[test]
    fn tolerance_absorbs_float_noise() {
        let e = -12.345678;
        let row = aggregate(&[rec(e, e, e * (1.0 + 1e-15)), rec(-6.0, -6.0, -5.5)], labels(), 1e-12).unwrap();
        assert_eq!((row.n_dw_lt_h, row.n_m_lt_h, row.n_m_eq_h, row.n_h_lt_m), (1, 1, 1, 0));
    }

    #[test]
    fn thousand_case_row_partitions() {
        // 775 + 106 + 119 = 1000 cases
        let mut recs = Vec::new();
        recs.extend(std::iter::repeat_n(rec(-2.0, -2.0, -1.0), 9));
        recs.extend(std::iter::repeat_n(rec(-1.0, -2.0, -1.0), 766));
        recs.extend(std::iter::repeat_n(rec(-1.0, -1.0, -1.0), 106));
        recs.extend(std::iter::repeat_n(rec(-1.0, -1.0, -2.0), 119));
        let row = aggregate(&recs, labels(), 1e-12).unwrap();
        assert_eq!((row.n_dw_lt_h, row.n_m_lt_h, row.n_m_eq_h, row.n_h_lt_m), (9, 775, 106, 119));
        assert_eq!(row.n_m_lt_h + row.n_m_eq_h + row.n_h_lt_m, row.cases);
    }

    #[test]
    fn empty_records_rejected() {
        assert!(matches!(aggregate(&[], labels(), 1e-12), Err(Error::EmptyRecords)));
    }

    #[test]
    fn table_layout() {
        let row = TableRow {
            bp: "dbl".into(),
            hp: "dbl".into(),
            cases: 10,
            samples: Some(100),
            n_dw_lt_h: 0,
            n_m_lt_h: 1,
            n_m_eq_h: 4,
            n_h_lt_m: 5,
        };
        let text = emit_table(&[row]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "| BP | HP | Cases | Samples | dw<h | m<h | m=h | h<m |");
        assert_eq!(lines[2], "| dbl | dbl | 10 | 100 | 0 | 1 | 4 | 5 |");
    }

    #[test]
    fn csv_round_trip_and_blank_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let recs = vec![
            ComparisonRecord { case_index: 0, e_dw: -1.0 / 3.0, e_m: -0.7, e_h: -0.7000000000000001, e_exact: Some(-0.8) },
            ComparisonRecord { case_index: 1, e_dw: 2.5, e_m: 2.5, e_h: 1e-300, e_exact: None },
        ];
        emit_csv(&recs, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("case_index,e_dw,e_m,e_h,e_exact\n"));
        assert!(text.lines().nth(2).unwrap().ends_with(','));
        assert_eq!(read_csv(&path).unwrap(), recs);
    }

    #[test]
    fn csv_errors() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.csv");
        std::fs::write(&bad, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_csv(&bad), Err(Error::Format { .. })));
        std::fs::write(&bad, "case_index,e_dw,e_m,e_h,e_exact\n0,x,1,1,\n").unwrap();
        assert!(read_csv(&bad).is_err());
        let unwritable = dir.path().join("missing-dir").join("r.csv");
        let err = emit_csv(&[rec(0.0, 0.0, 0.0)], &unwritable).unwrap_err();
        assert!(err.to_string().contains("missing-dir"));
    }
}
