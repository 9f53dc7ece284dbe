use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use srdepth::complex::SimplicialComplex;
use srdepth::depth::DepthReport;
use srdepth::limits::LimitsProfile;
use srdepth::linalg::FieldSpec;
use srdepth::report::{CheckReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthSummary {
    pub reisner: usize,
    pub topological: usize,
    pub auslander_buchsbaum: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoDims {
    pub kernel: usize,
    pub cokernel: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub srdec: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star_link: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key_lemma: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub munkres: Option<Verdict>,
}

impl Verdicts {
    pub fn all_pass(&self) -> bool {
        [self.srdec, self.star_link, self.key_lemma, self.munkres]
            .iter()
            .flatten()
            .all(|v| *v == Verdict::Pass)
    }
}

/// What every subcommand prints, as text or as JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub m: usize,
    pub dim: isize,
    pub f_vector: Vec<usize>,
    pub field: FieldSpec,
    pub depth: DepthSummary,
    pub cohen_macaulay: bool,
    pub reduced_cohomology: BTreeMap<i64, usize>,
    /// `lim^i` dimension per internal degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<BTreeMap<i64, BTreeMap<u32, usize>>>,
    /// Kernel and cokernel of `F(K) → lim` per internal degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<BTreeMap<u32, RhoDims>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Verdicts>,
    /// First failing check of each harness, for the text report.
    #[serde(skip)]
    pub witnesses: Vec<String>,
}

impl AnalysisReport {
    pub fn new(
        k: &SimplicialComplex,
        depth: &DepthReport,
        cohomology: BTreeMap<i64, usize>,
    ) -> Self {
        AnalysisReport {
            m: k.num_vertices(),
            dim: k.dim(),
            f_vector: k.f_vector(),
            field: depth.field,
            depth: DepthSummary {
                reisner: depth.r_reisner,
                topological: depth.r_topological,
                auslander_buchsbaum: depth.r_ab,
                agree: depth.agree,
            },
            cohen_macaulay: depth.cohen_macaulay,
            reduced_cohomology: cohomology,
            limits: None,
            rho: None,
            verdicts: None,
            witnesses: Vec::new(),
        }
    }

    pub fn set_limits(&mut self, profile: &LimitsProfile) {
        let mut limits: BTreeMap<i64, BTreeMap<u32, usize>> = BTreeMap::new();
        let mut rho = BTreeMap::new();
        for (&d, dl) in &profile.degrees {
            for (i, &x) in dl.lim.iter().enumerate() {
                limits.entry(i as i64).or_default().insert(d, x);
            }
            rho.insert(
                d,
                RhoDims {
                    kernel: dl.rho_kernel,
                    cokernel: dl.rho_cokernel,
                },
            );
        }
        self.limits = Some(limits);
        self.rho = Some(rho);
    }

    pub fn record(&mut self, check: &CheckReport) {
        let verdicts = self.verdicts.get_or_insert_with(Verdicts::default);
        let slot = match check.name {
            "srdec" => &mut verdicts.srdec,
            "star_link" => &mut verdicts.star_link,
            "key_lemma" => &mut verdicts.key_lemma,
            "munkres" => &mut verdicts.munkres,
            other => panic!("no verdict slot for {other}"),
        };
        *slot = Some(check.verdict());
        if let Some(w) = &check.witness {
            self.witnesses.push(format!("{}: {w}", check.name));
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.as_ref().is_none_or(Verdicts::all_pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.m)?;
        writeln!(f, "dimension: {}", self.dim)?;
        writeln!(f, "f-vector: ({})", join(&self.f_vector))?;
        writeln!(f, "field: {}", self.field)?;
        let d = &self.depth;
        writeln!(
            f,
            "depth: link criterion {}, topological {}, Auslander-Buchsbaum {} ({})",
            d.reisner,
            d.topological,
            d.auslander_buchsbaum,
            if d.agree { "agree" } else { "DISAGREE" }
        )?;
        writeln!(f, "Cohen-Macaulay: {}", yes_no(self.cohen_macaulay))?;
        let coh = join(
            self.reduced_cohomology
                .iter()
                .map(|(i, x)| format!("H~^{i} = {x}")),
        );
        writeln!(f, "reduced cohomology: {coh}")?;
        if let Some(limits) = &self.limits {
            writeln!(f, "limits (degree d, algebraic degree d/2):")?;
            for (i, row) in limits {
                let cells = join(row.iter().map(|(d, x)| format!("d={d} ({}): {x}", d / 2)));
                writeln!(f, "  lim^{i}: {cells}")?;
            }
        }
        if let Some(rho) = &self.rho {
            let cells = join(rho.iter().map(|(d, r)| {
                format!("d={d} ({}): ker {}, coker {}", d / 2, r.kernel, r.cokernel)
            }));
            writeln!(f, "rho: {cells}")?;
        }
        if let Some(v) = &self.verdicts {
            let mut line = String::new();
            for (name, verdict) in [
                ("srdec", v.srdec),
                ("star_link", v.star_link),
                ("key_lemma", v.key_lemma),
                ("munkres", v.munkres),
            ] {
                if let Some(verdict) = verdict {
                    if !line.is_empty() {
                        line.push_str(", ");
                    }
                    write!(line, "{name} {verdict}").unwrap();
                }
            }
            writeln!(f, "verdicts: {line}")?;
            for w in &self.witnesses {
                writeln!(f, "  {w}")?;
            }
        }
        Ok(())
    }
}
