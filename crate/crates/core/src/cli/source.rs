//! Algebra sources and numeric arguments.

use std::fs;
use std::path::Path;

use crate::algebra::{
    cayley_dickson, parse_algebra, table2_from_values, StructureConstants, Table2D, TableFamily,
};

/// Resolves `builtin:<name>` or a path to an algebra file.
///
/// Builtins: `complex`, `perplex`, `dual`, `cd:<level>` and
/// `table2:<family>:<v1,v2,…>` with the values of the `table2` file form.
pub fn resolve_algebra(source: &str) -> Result<StructureConstants, String> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => {
            let text =
                fs::read_to_string(Path::new(source)).map_err(|e| format!("{source}: {e}"))?;
            parse_algebra(&text).map_err(|e| format!("{source}:{}: {}", e.line, e.message))
        }
    }
}

fn builtin(name: &str) -> Result<StructureConstants, String> {
    match name {
        "complex" => return Ok(Table2D::complex().to_structure_constants()),
        "perplex" => return Ok(Table2D::perplex().to_structure_constants()),
        "dual" => return Ok(Table2D::dual().to_structure_constants()),
        _ => {}
    }
    if let Some(level) = name.strip_prefix("cd:") {
        let level: u32 = level
            .parse()
            .map_err(|_| format!("`{level}` is not a Cayley-Dickson level"))?;
        return cayley_dickson(level).map_err(|e| e.to_string());
    }
    if let Some(rest) = name.strip_prefix("table2:") {
        let (family, values) = rest.split_once(':').unwrap_or((rest, ""));
        let family: TableFamily = family.parse()?;
        let values = if values.is_empty() {
            Vec::new()
        } else {
            parse_coords(values)?
        };
        return Ok(table2_from_values(family, &values)?.to_structure_constants());
    }
    Err(format!(
        "unknown builtin `{name}` (expected complex, perplex, dual, cd:<n> or table2:<family>:<values>)"
    ))
}

/// `a1,a2,…`: decimal numbers with optional exponent.
pub fn parse_coords(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let v: f64 = t.parse().map_err(|_| format!("`{t}` is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("`{t}` is not finite"))
            }
        })
        .collect()
}

/// `WxH`.
pub fn parse_resolution(text: &str) -> Result<(usize, usize), String> {
    let (w, h) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("resolution `{text}` is not WxH"))?;
    let parse = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| format!("`{s}` is not a positive integer"))
    };
    Ok((parse(w)?, parse(h)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert_eq!(
            resolve_algebra("builtin:complex").unwrap(),
            Table2D::complex().to_structure_constants()
        );
        assert_eq!(resolve_algebra("builtin:cd:3").unwrap().dim(), 8);
        let t = resolve_algebra("builtin:table2:II:1,1,0,0,1,1").unwrap();
        assert_eq!(t.get(1, 1, 1), 1.0);
        assert_eq!(
            resolve_algebra("builtin:table2:vi:0,0,0,0").unwrap(),
            Table2D::with_sums(TableFamily::TwoIdempotents, 0.0, 0.0, 0.0, 0.0)
                .to_structure_constants()
        );
        assert!(resolve_algebra("builtin:quaternion").is_err());
        assert!(resolve_algebra("builtin:cd:9").is_err());
        assert!(resolve_algebra("builtin:table2:III:1,2").is_err());
    }

    #[test]
    fn files_report_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.alg");
        fs::write(&path, "dim 2\nalpha 1 1 1 x\n").unwrap();
        let err = resolve_algebra(path.to_str().unwrap()).unwrap_err();
        assert!(err.ends_with(":2: `x` is not a number"), "{err}");
        assert!(resolve_algebra("/nonexistent/file").is_err());
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_coords("1.5,-0.3,2e-1").unwrap(), vec![1.5, -0.3, 0.2]);
        assert!(parse_coords("1,,2").is_err());
        assert!(parse_coords("inf").is_err());
        assert_eq!(parse_resolution("64x32").unwrap(), (64, 32));
        assert!(parse_resolution("64").is_err());
        assert!(parse_resolution("0x5").is_err());
    }
}
