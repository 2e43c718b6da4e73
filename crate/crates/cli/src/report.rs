//! Serializable views of results and their table and CSV renderings.

use std::io::{self, Write};

use clap::ValueEnum;
use davenport_core::bounds::{BoundReport, GroupFacts, Rational};
use davenport_core::factorizer::{Factorization, FactorizerConfig, Move};
use davenport_core::group::Family;
use davenport_core::search::InvariantResult;
use davenport_core::witness::{Claim, Witness, WitnessKind};
use davenport_core::{FiniteGroup, OrderedSequence};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// A titled block of rows; table and CSV output are built from these.
pub struct Section {
    pub title: String,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub trait Render: Serialize {
    fn sections(&self) -> Vec<Section>;
}

fn key_values(title: impl Into<String>, pairs: Vec<(&'static str, String)>) -> Section {
    Section {
        title: title.into(),
        headers: vec!["field", "value"],
        rows: pairs.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect(),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write<R: Render>(out: &mut dyn Write, format: Format, view: &R) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, view)?;
            writeln!(out)
        }
        Format::Csv => {
            for (i, s) in view.sections().iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let line = |cells: Vec<String>| cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
                writeln!(out, "{}", line(s.headers.iter().map(|h| h.to_string()).collect()))?;
                for r in &s.rows {
                    writeln!(out, "{}", line(r.clone()))?;
                }
            }
            Ok(())
        }
        Format::Table => {
            for (i, s) in view.sections().iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "{}", s.title)?;
                let mut widths: Vec<usize> = s.headers.iter().map(|h| h.len()).collect();
                for r in &s.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> =
                        cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(out, "{}", line(s.headers.clone()))?;
                writeln!(out, "{}", line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()))?;
                for r in &s.rows {
                    writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
                }
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InfoView {
    pub group: String,
    pub order: usize,
    pub family: String,
    pub abelian: bool,
    pub cyclic: bool,
    pub nilpotent: bool,
    pub p_group: Option<u64>,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent_max_order: u32,
    pub conjugacy_classes: usize,
    pub maximal_subgroups: Option<Vec<usize>>,
    pub elements: Vec<String>,
}

impl InfoView {
    pub fn new(g: &FiniteGroup) -> Self {
        let facts = GroupFacts::new(g);
        let family = match g.family() {
            Family::Abelian(f) => format!("abelian {f:?}"),
            Family::Metacyclic { n, m, r } => format!("metacyclic n={n} m={m} r={r}"),
            Family::Table => "table".to_string(),
        };
        InfoView {
            group: g.label().to_string(),
            order: g.order(),
            family,
            abelian: facts.abelian,
            cyclic: facts.cyclic,
            nilpotent: facts.nilpotent,
            p_group: facts.p_group,
            center_order: facts.center.order(),
            derived_order: facts.derived.order(),
            exponent_max_order: g.max_element_order(),
            conjugacy_classes: g.conjugacy_classes().len(),
            maximal_subgroups: facts
                .subgroups_enumerated
                .then(|| facts.maximal_subgroups.iter().map(|h| h.order()).collect()),
            elements: g.names().to_vec(),
        }
    }
}

impl Render for InfoView {
    fn sections(&self) -> Vec<Section> {
        let maximal = self.maximal_subgroups.as_ref().map(|v| format!("{v:?}"));
        vec![key_values(
            format!("group {}", self.group),
            vec![
                ("order", self.order.to_string()),
                ("family", self.family.clone()),
                ("abelian", self.abelian.to_string()),
                ("cyclic", self.cyclic.to_string()),
                ("nilpotent", self.nilpotent.to_string()),
                ("p_group", opt(&self.p_group)),
                ("center_order", self.center_order.to_string()),
                ("derived_order", self.derived_order.to_string()),
                ("max_element_order", self.exponent_max_order.to_string()),
                ("conjugacy_classes", self.conjugacy_classes.to_string()),
                ("maximal_subgroup_orders", maximal.unwrap_or_default()),
                ("elements", self.elements.join(" ")),
            ],
        )]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantView {
    pub group: String,
    pub order: usize,
    pub invariant: String,
    pub value: usize,
    pub upper: Option<usize>,
    pub exhaustive: bool,
    pub nodes: u64,
    pub witness: String,
    pub witness_length: usize,
}

impl InvariantView {
    pub fn new(g: &FiniteGroup, r: &InvariantResult) -> Self {
        let (_, upper) = r.interval();
        InvariantView {
            group: g.label().to_string(),
            order: g.order(),
            invariant: r.invariant.symbol().to_string(),
            value: r.value,
            upper,
            exhaustive: r.exhaustive,
            nodes: r.nodes,
            witness: r.witness.format(g),
            witness_length: r.witness.len(),
        }
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.invariant.clone(),
            self.value.to_string(),
            opt(&self.upper),
            self.exhaustive.to_string(),
            self.nodes.to_string(),
            self.witness.clone(),
        ]
    }
}

const INVARIANT_HEADERS: [&str; 6] = ["invariant", "value", "upper", "exhaustive", "nodes", "witness"];

impl Render for InvariantView {
    fn sections(&self) -> Vec<Section> {
        vec![Section {
            title: format!("group {} (order {})", self.group, self.order),
            headers: INVARIANT_HEADERS.to_vec(),
            rows: vec![self.row()],
        }]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalView {
    pub text: String,
    pub num: u64,
    pub den: u64,
}

impl From<Rational> for RationalView {
    fn from(r: Rational) -> Self {
        RationalView { text: r.to_string(), num: r.num, den: r.den }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundView {
    pub id: String,
    pub target: String,
    pub relation: String,
    pub applicable: bool,
    pub reason: Option<String>,
    pub value: Option<RationalView>,
    pub conditional: bool,
    pub status: Option<String>,
    pub equality: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckView {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsView {
    pub d: InvariantView,
    #[serde(rename = "D")]
    pub big_d: InvariantView,
    pub eta: InvariantView,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyView {
    pub group: String,
    pub order: usize,
    pub invariants: InvariantsView,
    pub bounds: Vec<BoundView>,
    pub checks: Vec<CheckView>,
    pub violations: Vec<String>,
}

impl VerifyView {
    pub fn new(g: &FiniteGroup, r: &BoundReport) -> Self {
        let bounds = r
            .entries
            .iter()
            .map(|e| BoundView {
                id: e.id.name().to_string(),
                target: e.id.target().symbol().to_string(),
                relation: e.id.relation().symbol().to_string(),
                applicable: e.applicable,
                reason: e.reason.clone(),
                value: e.value.map(RationalView::from),
                conditional: e.conditional,
                status: e.status.map(|s| s.name().to_string()),
                equality: e.equality.map(|s| s.name().to_string()),
                detail: e.detail.clone(),
            })
            .collect();
        let checks = r
            .checks
            .iter()
            .map(|c| CheckView { name: c.name.clone(), status: c.status.name().to_string(), detail: c.detail.clone() })
            .collect();
        VerifyView {
            group: r.label.clone(),
            order: r.order,
            invariants: InvariantsView {
                d: InvariantView::new(g, &r.small_d),
                big_d: InvariantView::new(g, &r.large_d),
                eta: InvariantView::new(g, &r.eta),
            },
            bounds,
            checks,
            violations: r.violations.clone(),
        }
    }

    pub fn exhaustive(&self) -> bool {
        let i = &self.invariants;
        i.d.exhaustive && i.big_d.exhaustive && i.eta.exhaustive
    }
}

impl Render for VerifyView {
    fn sections(&self) -> Vec<Section> {
        let inv = &self.invariants;
        let mut out = vec![Section {
            title: format!("group {} (order {})", self.group, self.order),
            headers: INVARIANT_HEADERS.to_vec(),
            rows: vec![inv.d.row(), inv.big_d.row(), inv.eta.row()],
        }];
        out.push(Section {
            title: "bounds".to_string(),
            headers: vec!["bound", "target", "relation", "value", "status", "equality", "conditional", "note"],
            rows: self
                .bounds
                .iter()
                .map(|b| {
                    vec![
                        b.id.clone(),
                        b.target.clone(),
                        b.relation.clone(),
                        b.value.as_ref().map_or(String::new(), |v| v.text.clone()),
                        b.status.clone().unwrap_or_else(|| "n/a".to_string()),
                        opt(&b.equality),
                        b.conditional.to_string(),
                        b.reason.clone().unwrap_or_else(|| b.detail.clone()),
                    ]
                })
                .collect(),
        });
        out.push(Section {
            title: "checks".to_string(),
            headers: vec!["check", "status", "detail"],
            rows: self.checks.iter().map(|c| vec![c.name.clone(), c.status.clone(), c.detail.clone()]).collect(),
        });
        out.push(Section {
            title: "violations".to_string(),
            headers: vec!["violation"],
            rows: self.violations.iter().map(|v| vec![v.clone()]).collect(),
        });
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogSummary {
    pub groups: usize,
    pub violations: usize,
    pub not_exhaustive: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogView {
    pub entries: Vec<VerifyView>,
    pub summary: CatalogSummary,
}

impl CatalogView {
    pub fn new(entries: Vec<VerifyView>) -> Self {
        let summary = CatalogSummary {
            groups: entries.len(),
            violations: entries.iter().map(|e| e.violations.len()).sum(),
            not_exhaustive: entries.iter().filter(|e| !e.exhaustive()).count(),
        };
        CatalogView { entries, summary }
    }
}

impl Render for CatalogView {
    fn sections(&self) -> Vec<Section> {
        let flag = |v: &InvariantView| if v.exhaustive { v.value.to_string() } else { format!(">={}", v.value) };
        let rows = self
            .entries
            .iter()
            .map(|e| {
                let i = &e.invariants;
                let unchecked = e.bounds.iter().filter(|b| b.status.as_deref() == Some("unchecked")).count();
                let equal = e
                    .bounds
                    .iter()
                    .find(|b| b.id == "commutator")
                    .and_then(|b| b.equality.clone())
                    .unwrap_or_default();
                vec![
                    e.group.clone(),
                    e.order.to_string(),
                    flag(&i.d),
                    flag(&i.big_d),
                    flag(&i.eta),
                    equal,
                    unchecked.to_string(),
                    e.violations.len().to_string(),
                ]
            })
            .collect();
        let violations = self
            .entries
            .iter()
            .flat_map(|e| e.violations.iter().map(move |v| vec![e.group.clone(), v.clone()]))
            .collect();
        vec![
            Section {
                title: "catalog".to_string(),
                headers: vec!["group", "order", "d", "D", "eta", "commutator", "unchecked", "violations"],
                rows,
            },
            Section {
                title: format!(
                    "summary: {} groups, {} violations, {} not exhaustive",
                    self.summary.groups, self.summary.violations, self.summary.not_exhaustive
                ),
                headers: vec!["group", "violation"],
                rows: violations,
            },
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessView {
    pub kind: String,
    pub group: String,
    pub order: usize,
    pub claim: String,
    pub sequence: String,
    pub length: usize,
    pub expected_length: usize,
    pub check: bool,
}

impl WitnessView {
    pub fn new(kind: &WitnessKind, w: &Witness, check: bool) -> Self {
        WitnessView {
            kind: kind.name().to_string(),
            group: w.group.label().to_string(),
            order: w.group.order(),
            claim: match w.claim {
                Claim::Atom => "atom",
                Claim::ProductOneFree => "product_one_free",
            }
            .to_string(),
            sequence: w.sequence.format(&w.group),
            length: w.sequence.len(),
            expected_length: w.expected_len,
            check,
        }
    }
}

impl Render for WitnessView {
    fn sections(&self) -> Vec<Section> {
        vec![key_values(
            format!("{} in {}", self.kind, self.group),
            vec![
                ("order", self.order.to_string()),
                ("claim", self.claim.clone()),
                ("length", self.length.to_string()),
                ("expected_length", self.expected_length.to_string()),
                ("check", if self.check { "pass" } else { "fail" }.to_string()),
                ("sequence", self.sequence.clone()),
            ],
        )]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceView {
    #[serde(rename = "move")]
    pub mv: String,
    pub at: Option<usize>,
    pub sequence: String,
    pub block_lens: Vec<usize>,
    pub product: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizeView {
    pub group: String,
    pub input: String,
    pub omega: usize,
    pub omega_h: i64,
    pub omega_0: usize,
    pub h: Vec<String>,
    pub case: String,
    pub blocks: Vec<String>,
    pub remainder: String,
    pub rewrite_steps: usize,
    pub valid: bool,
    pub failures: Vec<String>,
    pub trace: Vec<TraceView>,
}

impl FactorizeView {
    pub fn new(
        g: &FiniteGroup,
        input: &OrderedSequence,
        cfg: &FactorizerConfig,
        f: &Factorization,
        failures: Vec<String>,
    ) -> Self {
        let trace = f
            .trace
            .iter()
            .map(|s| TraceView {
                mv: s.mv.name().to_string(),
                at: match s.mv {
                    Move::Swap { pos } => Some(pos),
                    Move::CommutePrefix { len } | Move::CyclicShift { len } => Some(len),
                    _ => None,
                },
                sequence: OrderedSequence::new(s.sequence.clone()).format(g),
                block_lens: s.block_lens.clone(),
                product: g.name(s.product).to_string(),
            })
            .collect();
        FactorizeView {
            group: g.label().to_string(),
            input: input.format(g),
            omega: cfg.omega,
            omega_h: cfg.omega_h,
            omega_0: cfg.omega_0,
            h: cfg.h.members().iter().map(|x| g.name(x).to_string()).collect(),
            case: f.case.name().to_string(),
            blocks: f.blocks.iter().map(|b| b.format(g)).collect(),
            remainder: f.remainder.format(g),
            rewrite_steps: f.rewrite_steps,
            valid: failures.is_empty(),
            failures,
            trace,
        }
    }
}

impl Render for FactorizeView {
    fn sections(&self) -> Vec<Section> {
        let mut summary = vec![
            ("input", self.input.clone()),
            ("case", self.case.clone()),
            ("rewrite_steps", self.rewrite_steps.to_string()),
            ("valid", self.valid.to_string()),
        ];
        for (i, b) in self.blocks.iter().enumerate() {
            summary.push(("block", format!("T{} = {b}", i + 1)));
        }
        summary.push(("remainder", self.remainder.clone()));
        for f in &self.failures {
            summary.push(("failure", f.clone()));
        }
        let trace = Section {
            title: "trace".to_string(),
            headers: vec!["move", "at", "block_lens", "product", "sequence"],
            rows: self
                .trace
                .iter()
                .map(|t| vec![t.mv.clone(), opt(&t.at), format!("{:?}", t.block_lens), t.product.clone(), t.sequence.clone()])
                .collect(),
        };
        vec![key_values(format!("factorization in {}", self.group), summary), trace]
    }
}
