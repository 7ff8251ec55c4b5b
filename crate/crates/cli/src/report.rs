//! CSV output with a JSON metadata header line.
//!
//! Every file starts with `# {json}` recording the command, seed, and
//! parameters, followed by a header row and plain comma-separated values
//! (fields never contain commas).

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

pub fn write_csv<P: AsRef<Path>>(
    path: P,
    meta: &serde_json::Value,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> io::Result<()> {
    if let Some(dir) = path.as_ref().parent() {
        fs::create_dir_all(dir)?;
    }
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "# {meta}")?;
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}

pub struct CsvContents {
    pub meta: serde_json::Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn read_csv<P: AsRef<Path>>(path: P) -> io::Result<CsvContents> {
    let reader = BufReader::new(File::open(path)?);
    let mut meta = serde_json::Value::Null;
    let mut header = Vec::new();
    let mut rows = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            meta = serde_json::from_str(rest.trim())
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
            continue;
        }
        let fields: Vec<String> = line.split(',').map(str::to_string).collect();
        if header.is_empty() {
            header = fields;
        } else {
            if fields.len() != header.len() {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("row {} has {} fields, expected {}", i, fields.len(), header.len()),
                ));
            }
            rows.push(fields);
        }
    }
    Ok(CsvContents { meta, header, rows })
}

pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.12e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.csv");
        let meta = serde_json::json!({"command": "demo", "seed": 7});
        write_csv(
            &path,
            &meta,
            &["a", "b"],
            vec![
                vec!["1".to_string(), "x".to_string()],
                vec!["2".to_string(), "y".to_string()],
            ],
        )
        .unwrap();
        let back = read_csv(&path).unwrap();
        assert_eq!(back.meta, meta);
        assert_eq!(back.header, vec!["a", "b"]);
        assert_eq!(back.rows.len(), 2);
        assert_eq!(back.rows[1][1], "y");
    }
}
