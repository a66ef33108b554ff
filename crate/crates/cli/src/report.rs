//! Typed command outputs. Every integer is carried as a decimal string so the
//! JSON form never loses precision, and classes are bitstrings over the poset
//! element order printed by `basis`.

use serde::{Deserialize, Serialize};

pub trait Render {
    fn table(&self) -> String;
}

fn grid(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    let dashes: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out += &line(dashes.iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(|s| s.as_str()).collect());
    }
    out
}

fn fields(pairs: &[(&str, String)]) -> String {
    let w = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<w$}  {v}\n"))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceRow {
    pub name: String,
    pub root_type: String,
    pub dim: String,
    pub index: String,
    pub r: String,
    pub vmrt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ListReport {
    pub spaces: Vec<SpaceRow>,
}

impl Render for ListReport {
    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .spaces
            .iter()
            .map(|s| {
                vec![
                    s.name.clone(),
                    s.root_type.clone(),
                    s.dim.clone(),
                    s.index.clone(),
                    s.r.clone(),
                    s.vmrt.clone(),
                ]
            })
            .collect();
        grid(&["space", "type", "dim", "ind", "r", "VMRT"], &rows)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfoReport {
    pub name: String,
    pub root_type: String,
    pub dim: String,
    pub index: String,
    pub r: String,
    pub vmrt: String,
    pub vmrt_dim: String,
    /// `V`, `V(V)`, ... down to the first Segre or Veronese variety.
    pub tower: Vec<String>,
    pub degree: String,
    pub basis_size: String,
    pub cone_class: String,
}

impl Render for InfoReport {
    fn table(&self) -> String {
        fields(&[
            ("space", self.name.clone()),
            ("type", self.root_type.clone()),
            ("dim", self.dim.clone()),
            ("ind", self.index.clone()),
            ("r", self.r.clone()),
            ("VMRT", self.vmrt.clone()),
            ("dim V", self.vmrt_dim.clone()),
            ("tower", self.tower.join(" -> ")),
            ("degree", self.degree.clone()),
            ("basis size", self.basis_size.clone()),
            ("cone class", self.cone_class.clone()),
        ])
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisRow {
    pub index: String,
    pub class: String,
    pub dim: String,
    /// Codimension partition, Grassmannians only.
    pub partition: Option<String>,
    pub degree: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisReport {
    pub space: String,
    /// Simple-root coefficients of the poset elements, in bitstring order.
    pub elements: Vec<String>,
    pub classes: Vec<BasisRow>,
}

impl Render for BasisReport {
    fn table(&self) -> String {
        let mut out = String::new();
        for (k, e) in self.elements.iter().enumerate() {
            out += &format!("element {k}: ({e})\n");
        }
        out.push('\n');
        let with_partition = self.classes.iter().any(|c| c.partition.is_some());
        let rows: Vec<Vec<String>> = self
            .classes
            .iter()
            .map(|c| {
                let mut row = vec![c.index.clone(), c.class.clone(), c.dim.clone()];
                if with_partition {
                    row.push(c.partition.clone().unwrap_or_default());
                }
                row.push(c.degree.clone());
                row
            })
            .collect();
        if with_partition {
            out + &grid(&["#", "class", "dim", "partition", "degree"], &rows)
        } else {
            out + &grid(&["#", "class", "dim", "degree"], &rows)
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Term {
    pub class: String,
    pub dim: String,
    pub partition: Option<String>,
    pub coefficient: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LrReport {
    pub space: String,
    pub a: String,
    pub b: String,
    pub terms: Vec<Term>,
}

impl Render for LrReport {
    fn table(&self) -> String {
        let mut out = format!("[X_{}] * [X_{}] on {}\n", self.a, self.b, self.space);
        if self.terms.is_empty() {
            return out + "0\n";
        }
        let rows: Vec<Vec<String>> = self
            .terms
            .iter()
            .map(|t| {
                vec![
                    t.class.clone(),
                    t.dim.clone(),
                    t.partition.clone().unwrap_or_default(),
                    t.coefficient.clone(),
                ]
            })
            .collect();
        out += &grid(&["class", "dim", "partition", "coefficient"], &rows);
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IncidenceEntry {
    pub sigma: String,
    pub tau: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IncidenceReport {
    pub space: String,
    pub nonzero: String,
    pub total_weight: String,
    pub entries: Vec<IncidenceEntry>,
}

impl Render for IncidenceReport {
    fn table(&self) -> String {
        let head = fields(&[
            ("space", self.space.clone()),
            ("nonzero entries", self.nonzero.clone()),
            ("total weight", self.total_weight.clone()),
        ]);
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|e| vec![e.sigma.clone(), e.tau.clone(), e.value.clone()])
            .collect();
        head + "\n" + &grid(&["sigma", "tau", "a"], &rows)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaReport {
    pub space: String,
    pub i: String,
    pub value: String,
    pub d_i: String,
    pub basis_size: String,
    pub truncation_degree: String,
    pub incidence_nonzeros: String,
}

impl Render for DeltaReport {
    fn table(&self) -> String {
        format!("{}\n", self.value)
            + &fields(&[
                ("space", self.space.clone()),
                ("i", self.i.clone()),
                ("d_i", self.d_i.clone()),
                ("basis size", self.basis_size.clone()),
                ("truncation degree", self.truncation_degree.clone()),
                ("incidence nonzeros", self.incidence_nonzeros.clone()),
            ])
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundComponentsOut {
    pub smoothness_term: String,
    pub index_term: String,
    /// `None` when the chain number was skipped.
    pub delta_term: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundOut {
    pub space: String,
    pub d: String,
    pub case: String,
    pub e: String,
    pub m: String,
    pub delta_v: Option<String>,
    pub chain_length: String,
    pub components: BoundComponentsOut,
    pub bound: String,
    pub binding: String,
    /// Maximum over this report and all descendants.
    pub overall_bound: String,
    pub delta_pending: bool,
    pub child: Option<Box<BoundOut>>,
}

impl From<&comin_core::BoundReport> for BoundOut {
    fn from(r: &comin_core::BoundReport) -> Self {
        BoundOut {
            space: r.space.name(),
            d: r.d.to_string(),
            case: r.case.to_string(),
            e: r.e.to_string(),
            m: r.m.to_string(),
            delta_v: r.delta_v.as_ref().map(|x| x.to_string()),
            chain_length: r.chain_length.to_string(),
            components: BoundComponentsOut {
                smoothness_term: r.components.smoothness_term.to_string(),
                index_term: r.components.index_term.to_string(),
                delta_term: r.components.delta_term.as_ref().map(|x| x.to_string()),
            },
            bound: r.bound.to_string(),
            binding: r.binding_component().to_string(),
            overall_bound: r.overall_bound().to_string(),
            delta_pending: r.delta_pending(),
            child: r.child.as_deref().map(|c| Box::new(BoundOut::from(c))),
        }
    }
}

impl Render for BoundOut {
    fn table(&self) -> String {
        let mut out = String::new();
        let mut cur = Some(self);
        let mut depth = 0;
        while let Some(r) = cur {
            let indent = "  ".repeat(depth);
            out += &format!("{indent}{} at d = {} (case {})\n", r.space, r.d, r.case);
            let mut pairs = vec![("e", r.e.clone()), ("m", r.m.clone())];
            if let Some(dv) = &r.delta_v {
                pairs.push(("deg V", dv.clone()));
            }
            pairs.push(("smoothness_term", r.components.smoothness_term.clone()));
            pairs.push(("index_term", r.components.index_term.clone()));
            pairs.push((
                "delta_term",
                match &r.components.delta_term {
                    Some(x) => format!("{x} (chain length {})", r.chain_length),
                    None => "skipped".into(),
                },
            ));
            pairs.push(("bound", format!("{} ({})", r.bound, r.binding)));
            for line in fields(&pairs).lines() {
                out += &format!("{indent}  {line}\n");
            }
            cur = r.child.as_deref();
            depth += 1;
        }
        out += &format!("overall bound: p > {}\n", self.overall_bound);
        if self.delta_pending {
            out += "note: some delta terms were skipped; the bound ignores them\n";
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_alignment() {
        let g = grid(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(g, "a    bb\n---  --\nxyz  1\n");
    }
}
