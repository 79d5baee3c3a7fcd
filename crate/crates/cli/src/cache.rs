//! Append-only CSV cache of crossing points and zero tables.
//!
//! The first line records the code version; a file written by another
//! version is ignored (with a warning) and rewritten from scratch. Floats are
//! stored in shortest round-trip form, so a cache hit reproduces the fresh
//! computation bit for bit.
//!
//! Row kinds:
//! - `crossing`: key φ, `n` the phase index, aux the directed value;
//! - `low`: a crossing below t = 10, same columns, in ascending t;
//! - `lowscan`: key φ, `n` the number of `low` rows (marks a finished scan);
//! - `zero`: key T, `n` the ordinal, `re`/`im` the bracket, aux the accuracy;
//! - `zeroscan`: key T, `n` the number of zeros (marks a finished table).

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use critline_core::{CrossingPoint, LineAngle, ZeroRecord, CODE_VERSION};
use num_complex::Complex64;

pub const FORMAT_VERSION: u32 = 1;
pub const COLUMNS: &str = "kind,key,n,t,re,im,aux";

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "CRITLINE_CACHE_DIR";
pub const DEFAULT_FILE_NAME: &str = "critline-cache.csv";

pub fn header_line() -> String {
    format!("# critline-cache version={CODE_VERSION} format={FORMAT_VERSION}")
}

/// Cache path from an explicit flag, else from [`CACHE_DIR_ENV`].
pub fn resolve_path(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(CACHE_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(DEFAULT_FILE_NAME))
    })
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    crossings: HashMap<(u64, i64), CrossingPoint>,
    low: HashMap<u64, Vec<CrossingPoint>>,
    zeros: HashMap<u64, Vec<ZeroRecord>>,
    pending: Vec<String>,
    rewrite: bool,
    hits: usize,
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.parse::<f64>()
        .with_context(|| format!("invalid {what} value {s:?}"))
}

fn parse_i64(s: &str, what: &str) -> Result<i64> {
    s.parse::<i64>()
        .with_context(|| format!("invalid {what} value {s:?}"))
}

impl Cache {
    /// Load `path` if it exists. A missing file is an empty cache.
    pub fn open(path: &Path) -> Result<Cache> {
        let mut cache = Cache {
            path: path.to_path_buf(),
            crossings: HashMap::new(),
            low: HashMap::new(),
            zeros: HashMap::new(),
            pending: Vec::new(),
            rewrite: true,
            hits: 0,
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e).with_context(|| format!("opening cache {}", path.display())),
        };
        let mut lines = BufReader::new(file).lines();
        let first = match lines.next() {
            Some(l) => l.with_context(|| format!("reading cache {}", path.display()))?,
            None => return Ok(cache),
        };
        if first != header_line() {
            log::warn!(
                "cache {} was written by a different code version ({first:?}); ignoring and rewriting it",
                path.display()
            );
            return Ok(cache);
        }
        let mut low_rows: HashMap<u64, Vec<CrossingPoint>> = HashMap::new();
        let mut low_done: HashMap<u64, usize> = HashMap::new();
        let mut zero_rows: HashMap<u64, Vec<ZeroRecord>> = HashMap::new();
        let mut zero_done: HashMap<u64, usize> = HashMap::new();
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            let line = line.with_context(|| format!("reading cache {}", path.display()))?;
            if lineno == 2 {
                if line != COLUMNS {
                    bail!(
                        "{}:{lineno}: unexpected column header {line:?}",
                        path.display()
                    );
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            cache
                .parse_row(
                    &line,
                    &mut low_rows,
                    &mut low_done,
                    &mut zero_rows,
                    &mut zero_done,
                )
                .with_context(|| {
                    format!("{}:{lineno}: corrupted cache row {line:?}", path.display())
                })?;
        }
        for (key, n) in low_done {
            let rows = low_rows.remove(&key).unwrap_or_default();
            if rows.len() == n {
                cache.low.insert(key, rows);
            }
        }
        for (key, n) in zero_done {
            let rows = zero_rows.remove(&key).unwrap_or_default();
            if rows.len() == n {
                cache.zeros.insert(key, rows);
            }
        }
        cache.rewrite = false;
        Ok(cache)
    }

    fn parse_row(
        &mut self,
        line: &str,
        low_rows: &mut HashMap<u64, Vec<CrossingPoint>>,
        low_done: &mut HashMap<u64, usize>,
        zero_rows: &mut HashMap<u64, Vec<ZeroRecord>>,
        zero_done: &mut HashMap<u64, usize>,
    ) -> Result<()> {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            bail!("expected 7 fields, found {}", f.len());
        }
        let key = parse_f64(f[1], "key")?;
        let n = parse_i64(f[2], "n")?;
        match f[0] {
            "crossing" | "low" => {
                let phi = LineAngle::new(key)?;
                let p = CrossingPoint {
                    n,
                    phi,
                    t: parse_f64(f[3], "t")?,
                    zeta: Complex64::new(parse_f64(f[4], "re")?, parse_f64(f[5], "im")?),
                    directed_value: parse_f64(f[6], "aux")?,
                };
                if f[0] == "low" {
                    low_rows.entry(key.to_bits()).or_default().push(p);
                } else {
                    self.crossings.insert((key.to_bits(), n), p);
                }
            }
            "lowscan" => {
                low_done.insert(key.to_bits(), usize::try_from(n)?);
            }
            "zero" => {
                let z = ZeroRecord {
                    k: usize::try_from(n)?,
                    gamma: parse_f64(f[3], "t")?,
                    bracket: (parse_f64(f[4], "re")?, parse_f64(f[5], "im")?),
                    refined_accuracy: parse_f64(f[6], "aux")?,
                };
                zero_rows.entry(key.to_bits()).or_default().push(z);
            }
            "zeroscan" => {
                zero_done.insert(key.to_bits(), usize::try_from(n)?);
            }
            other => bail!("unknown row kind {other:?}"),
        }
        Ok(())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Number of lookups answered from the cache so far.
    pub fn hits(&self) -> usize {
        self.hits
    }

    pub fn crossing(&mut self, phi: LineAngle, n: i64) -> Option<CrossingPoint> {
        let hit = self.crossings.get(&(phi.radians().to_bits(), n)).copied();
        self.hits += usize::from(hit.is_some());
        hit
    }

    pub fn low(&mut self, phi: LineAngle) -> Option<Vec<CrossingPoint>> {
        let hit = self.low.get(&phi.radians().to_bits()).cloned();
        self.hits += usize::from(hit.is_some());
        hit
    }

    pub fn zeros(&mut self, t_max: f64) -> Option<Vec<ZeroRecord>> {
        let hit = self.zeros.get(&t_max.to_bits()).cloned();
        self.hits += usize::from(hit.is_some());
        hit
    }

    fn crossing_line(kind: &str, p: &CrossingPoint) -> String {
        format!(
            "{kind},{:?},{},{:?},{:?},{:?},{:?}",
            p.phi.radians(),
            p.n,
            p.t,
            p.zeta.re,
            p.zeta.im,
            p.directed_value
        )
    }

    pub fn insert_crossing(&mut self, p: CrossingPoint) {
        let key = (p.phi.radians().to_bits(), p.n);
        if self.crossings.insert(key, p).is_none() {
            self.pending.push(Self::crossing_line("crossing", &p));
        }
    }

    pub fn insert_low(&mut self, phi: LineAngle, points: &[CrossingPoint]) {
        let key = phi.radians().to_bits();
        if self.low.contains_key(&key) {
            return;
        }
        for p in points {
            self.pending.push(Self::crossing_line("low", p));
        }
        self.pending
            .push(format!("lowscan,{:?},{},,,,", phi.radians(), points.len()));
        self.low.insert(key, points.to_vec());
    }

    pub fn insert_zeros(&mut self, t_max: f64, zeros: &[ZeroRecord]) {
        let key = t_max.to_bits();
        if self.zeros.contains_key(&key) {
            return;
        }
        for z in zeros {
            self.pending.push(format!(
                "zero,{t_max:?},{},{:?},{:?},{:?},{:?}",
                z.k, z.gamma, z.bracket.0, z.bracket.1, z.refined_accuracy
            ));
        }
        self.pending
            .push(format!("zeroscan,{t_max:?},{},,,,", zeros.len()));
        self.zeros.insert(key, zeros.to_vec());
    }

    /// Append pending rows; a new or outdated file is rewritten with headers.
    pub fn flush(&mut self) -> Result<()> {
        if self.pending.is_empty() && !self.rewrite {
            return Ok(());
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)
                .with_context(|| format!("creating cache directory {}", dir.display()))?;
        }
        let file = if self.rewrite {
            File::create(&self.path)
        } else {
            OpenOptions::new().append(true).open(&self.path)
        }
        .with_context(|| format!("writing cache {}", self.path.display()))?;
        let mut w = BufWriter::new(file);
        if self.rewrite {
            writeln!(w, "{}", header_line())?;
            writeln!(w, "{COLUMNS}")?;
        }
        for line in self.pending.drain(..) {
            writeln!(w, "{line}")?;
        }
        w.flush()
            .with_context(|| format!("writing cache {}", self.path.display()))?;
        self.rewrite = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(n: i64, t: f64) -> CrossingPoint {
        CrossingPoint {
            n,
            phi: LineAngle::new(0.25).unwrap(),
            t,
            zeta: Complex64::new(0.1 + t, -1.0 / 3.0),
            directed_value: std::f64::consts::PI * t,
        }
    }

    #[test]
    fn round_trip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        let mut c = Cache::open(&path).unwrap();
        let pts: Vec<_> = (0..50).map(|n| point(n, 10.0 + n as f64 / 7.0)).collect();
        for p in &pts {
            c.insert_crossing(*p);
        }
        c.insert_low(LineAngle::new(0.25).unwrap(), &pts[..2]);
        c.flush().unwrap();
        let mut again = Cache::open(&path).unwrap();
        for p in &pts {
            assert_eq!(again.crossing(p.phi, p.n), Some(*p));
        }
        assert_eq!(
            again.low(LineAngle::new(0.25).unwrap()).unwrap(),
            pts[..2].to_vec()
        );
        assert_eq!(again.hits(), 51);
    }

    #[test]
    fn unfinished_low_scan_is_not_served() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        let p = point(-1, 3.0);
        std::fs::write(
            &path,
            format!(
                "{}\n{COLUMNS}\n{}\n",
                header_line(),
                Cache::crossing_line("low", &p)
            ),
        )
        .unwrap();
        let mut c = Cache::open(&path).unwrap();
        assert!(c.low(p.phi).is_none());
    }

    #[test]
    fn corrupted_row_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        std::fs::write(
            &path,
            format!(
                "{}\n{COLUMNS}\ncrossing,0.25,3,17.5,1.0,2.0,3.0\ncrossing,0.25,4,xx,1,2,3\n",
                header_line()
            ),
        )
        .unwrap();
        let err = format!("{:#}", Cache::open(&path).unwrap_err());
        assert!(err.contains(":4:"), "{err}");
    }

    #[test]
    fn other_version_is_discarded() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        std::fs::write(
            &path,
            format!("# critline-cache version=0.0.0 format=1\n{COLUMNS}\ncrossing,0.25,3,17.5,1.0,2.0,3.0\n"),
        )
        .unwrap();
        let mut c = Cache::open(&path).unwrap();
        assert!(c.crossing(LineAngle::new(0.25).unwrap(), 3).is_none());
        c.flush().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, format!("{}\n{COLUMNS}\n", header_line()));
    }
}
