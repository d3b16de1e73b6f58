//! Vertex-file and cost-vector ingestion.
//!
//! Vertex files are plain text, one vertex per line, `label: p/q p/q ...`
//! with exact rationals; blank lines and `#` comments are skipped.

use std::path::Path;

use biplab_core::exactgeom::{parse_rat, Rat, RationalPolytope};

use crate::CliError;

pub fn read_vertex_file(path: &Path) -> Result<RationalPolytope, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut vertices = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, coords) = line.split_once(':').ok_or_else(|| {
            CliError::Usage(format!(
                "{}:{}: expected `label: p/q p/q ...`",
                path.display(),
                lineno + 1
            ))
        })?;
        let coords: Vec<Rat> = coords
            .split_whitespace()
            .map(parse_rat)
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        vertices.push((label.trim().to_string(), coords));
    }
    RationalPolytope::new(vertices).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn parse_cost(spec: &str) -> Result<Vec<Rat>, CliError> {
    spec.split(',')
        .map(|p| parse_rat(p).map_err(CliError::Usage))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cost_vectors() {
        let cost = parse_cost("1,2,4").unwrap();
        assert_eq!(cost.len(), 3);
        assert!(parse_cost("1,x").is_err());
        let halves = parse_cost("1/2,-3/4").unwrap();
        assert_eq!(halves[1], Rat::new((-3).into(), 4.into()));
    }

    #[test]
    fn reads_vertex_files() {
        let dir = std::env::temp_dir().join("biplab-ingest-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("segment.txt");
        std::fs::write(&path, "# a segment\na: 0\nb: 1\n").unwrap();
        let poly = read_vertex_file(&path).unwrap();
        assert_eq!(poly.len(), 2);
        assert_eq!(poly.labels(), &["a".to_string(), "b".to_string()]);
        std::fs::write(&path, "bad line\n").unwrap();
        assert!(read_vertex_file(&path).is_err());
    }
}
