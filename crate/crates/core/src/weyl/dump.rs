//! Plain-text module dumps.
//!
//! ```text
//! module-dump 1
//! type G2
//! rank 2
//! highest 1,0
//! field 5            (or: field integral)
//! dim 7
//! weights
//! 1,0
//! ...
//! op 1,0 1 3         (root in simple-root coordinates, divided power, entry count)
//! 0 1 1              (row, col, value as a decimal string)
//! ...
//! end
//! ```
//!
//! Basis vectors are listed in order; operators are listed by root in the
//! order positive roots then negative roots, then by divided power.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::root_system::Weight;
use crate::weyl::integral::IntegralRep;
use crate::weyl::modular::ModularModule;
use crate::weyl::SignedRoot;

pub const DUMP_VERSION: u32 = 1;

/// A parsed dump. Values are kept as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDump {
    pub lie_type: String,
    pub rank: usize,
    pub highest: Weight,
    pub field: Option<u32>,
    pub basis_weights: Vec<Weight>,
    pub ops: Vec<DumpOp>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DumpOp {
    pub root: Vec<i64>,
    pub k: u32,
    pub entries: Vec<(usize, usize, String)>,
}

fn root_str(r: &[i64]) -> String {
    r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn header(out: &mut String, label: &str, rank: usize, highest: &Weight, field: &str, dim: usize) {
    let _ = writeln!(out, "module-dump {DUMP_VERSION}");
    let _ = writeln!(out, "type {label}");
    let _ = writeln!(out, "rank {rank}");
    let _ = writeln!(out, "highest {highest}");
    let _ = writeln!(out, "field {field}");
    let _ = writeln!(out, "dim {dim}");
}

pub fn dump_modular(module: &ModularModule) -> String {
    let datum = module.datum();
    let mut out = String::new();
    header(
        &mut out,
        datum.label(),
        datum.rank(),
        module.highest(),
        &module.prime().to_string(),
        module.dim(),
    );
    out.push_str("weights\n");
    for w in module.basis_weights() {
        let _ = writeln!(out, "{w}");
    }
    let n = datum.num_positive_roots();
    for (&(id, k), m) in module.ops() {
        let root = SignedRoot::from_id(id, n).coords(datum);
        let mut entries = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c);
                if v != 0 {
                    entries.push((r, c, v));
                }
            }
        }
        let _ = writeln!(out, "op {} {k} {}", root_str(&root), entries.len());
        for (r, c, v) in entries {
            let _ = writeln!(out, "{r} {c} {v}");
        }
    }
    out.push_str("end\n");
    out
}

pub fn dump_integral(rep: &IntegralRep) -> String {
    let datum = rep.datum();
    let mut out = String::new();
    header(
        &mut out,
        datum.label(),
        datum.rank(),
        rep.highest(),
        "integral",
        rep.dim(),
    );
    out.push_str("weights\n");
    for w in rep.basis_weights() {
        let _ = writeln!(out, "{w}");
    }
    let n = datum.num_positive_roots();
    let offsets = rep.weight_offsets();
    for (&(id, k), blocks) in rep.all_ops() {
        let root = SignedRoot::from_id(id, n).coords(datum);
        let mut entries = Vec::new();
        for b in blocks {
            for r in 0..b.matrix.rows {
                for c in 0..b.matrix.cols {
                    let v = b.matrix.get(r, c);
                    if !num_traits::Zero::is_zero(v) {
                        entries.push((offsets[b.target] + r, offsets[b.source] + c, v.to_string()));
                    }
                }
            }
        }
        entries.sort();
        let _ = writeln!(out, "op {} {k} {}", root_str(&root), entries.len());
        for (r, c, v) in entries {
            let _ = writeln!(out, "{r} {c} {v}");
        }
    }
    out.push_str("end\n");
    out
}

pub fn parse_dump(text: &str) -> Result<ModuleDump> {
    let bad = |msg: &str| Error::Parse(format!("module dump: {msg}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let mut field = |name: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| bad("truncated header"))?;
        let (key, val) = line.split_once(' ').ok_or_else(|| bad(line))?;
        if key != name {
            return Err(bad(&format!("expected '{name}', found '{key}'")));
        }
        Ok(val.trim().to_string())
    };
    let version: u32 = field("module-dump")?.parse().map_err(|_| bad("version"))?;
    if version != DUMP_VERSION {
        return Err(bad(&format!("unsupported version {version}")));
    }
    let lie_type = field("type")?;
    let rank: usize = field("rank")?.parse().map_err(|_| bad("rank"))?;
    let highest: Weight = field("highest")?.parse()?;
    let f = field("field")?;
    let field_p = if f == "integral" {
        None
    } else {
        Some(f.parse().map_err(|_| bad("field"))?)
    };
    let dim: usize = field("dim")?.parse().map_err(|_| bad("dim"))?;
    if lines.next() != Some("weights") {
        return Err(bad("missing weights section"));
    }
    let mut basis_weights = Vec::with_capacity(dim);
    for _ in 0..dim {
        basis_weights.push(lines.next().ok_or_else(|| bad("truncated weights"))?.parse()?);
    }
    let mut ops = Vec::new();
    loop {
        let line = lines.next().ok_or_else(|| bad("missing 'end'"))?;
        if line == "end" {
            break;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "op" {
            return Err(bad(line));
        }
        let root: Weight = parts[1].parse()?;
        let k: u32 = parts[2].parse().map_err(|_| bad(line))?;
        let count: usize = parts[3].parse().map_err(|_| bad(line))?;
        let mut entries = Vec::with_capacity(count);
        for _ in 0..count {
            let e = lines.next().ok_or_else(|| bad("truncated operator"))?;
            let t: Vec<&str> = e.split_whitespace().collect();
            if t.len() != 3 {
                return Err(bad(e));
            }
            let r = t[0].parse().map_err(|_| bad(e))?;
            let c = t[1].parse().map_err(|_| bad(e))?;
            entries.push((r, c, t[2].to_string()));
        }
        ops.push(DumpOp {
            root: root.0,
            k,
            entries,
        });
    }
    Ok(ModuleDump {
        lie_type,
        rank,
        highest,
        field: field_p,
        basis_weights,
        ops,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_root_system, Family};
    use crate::weyl::{construct_weyl_module, irreducible_head_mod_p};

    #[test]
    fn round_trip() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        let rep = construct_weyl_module(&g2, &Weight(vec![1, 0])).unwrap();
        let text = dump_integral(&rep);
        let d = parse_dump(&text).unwrap();
        assert_eq!(d.field, None);
        assert_eq!(d.basis_weights.len(), 7);
        assert_eq!(d.lie_type, "G2");
        let head = irreducible_head_mod_p(&rep, 2).unwrap();
        let d = parse_dump(&dump_modular(&head)).unwrap();
        assert_eq!(d.field, Some(2));
        assert_eq!(d.basis_weights.len(), 6);
        assert!(d.ops.iter().all(|o| o.root.len() == 2));
    }
}
