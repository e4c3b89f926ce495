use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    ModeSequencing,
    Communication,
    Localisation,
    Reaction,
    Safety,
    Other,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::ModeSequencing => "ModeSequencing",
            Category::Communication => "Communication",
            Category::Localisation => "Localisation",
            Category::Reaction => "Reaction",
            Category::Safety => "Safety",
            Category::Other => "Other",
        })
    }
}

/// Where a pattern comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Prior2019,
    Prior2024,
    New,
    Potential,
    Variant,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Prior2019 => "prior-2019",
            Provenance::Prior2024 => "prior-2024",
            Provenance::New => "new",
            Provenance::Potential => "potential",
            Provenance::Variant => "variant",
        })
    }
}

/// Variant axes, listed in the order their prefixes appear in a name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Probabilistic,
    Modal,
    Triggered,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Probabilistic, Axis::Modal, Axis::Triggered];

    pub fn prefix(self) -> &'static str {
        match self {
            Axis::Probabilistic => "Probabilistic",
            Axis::Modal => "Modal",
            Axis::Triggered => "Triggered",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

/// A named parameter and how many formulas it binds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Role {
    pub name: &'static str,
    pub min: usize,
    pub max: Option<usize>,
    /// Boolean identifiers only; otherwise any propositional formula.
    pub atoms_only: bool,
}

const fn one(name: &'static str, atoms_only: bool) -> Role {
    Role { name, min: 1, max: Some(1), atoms_only }
}

const fn many(name: &'static str, min: usize, atoms_only: bool) -> Role {
    Role { name, min, max: None, atoms_only }
}

const fn optional(name: &'static str) -> Role {
    Role { name, min: 0, max: Some(1), atoms_only: false }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTemplate {
    pub name: &'static str,
    pub category: Category,
    pub provenance: Provenance,
    pub variant_axes: &'static [Axis],
    pub roles: &'static [Role],
    /// FRETish skeleton; `None` for label-only entries.
    pub skeleton: Option<&'static str>,
    pub ltl_schema: Option<&'static str>,
}

impl PatternTemplate {
    pub fn is_label_only(&self) -> bool {
        self.skeleton.is_none()
    }

    pub fn role(&self, name: &str) -> Option<&Role> {
        self.roles.iter().find(|r| r.name == name)
    }

    pub fn supports(&self, axis: Axis) -> bool {
        self.variant_axes.contains(&axis)
    }
}

pub const PHASES: &str = "Phases";
pub const TRANSMIT: &str = "Transmit";
pub const RECONNECT: &str = "Reconnect";
pub const STAY_IN_PERIMETER: &str = "Stay-In-Perimeter";
pub const KEEP_OUT_ZONE: &str = "Keep-Out-Zone";
pub const INSTANT_REACTION: &str = "Instant Reaction";
pub const PROMPT_REACTION: &str = "Prompt Reaction";
pub const DELAYED_REACTION: &str = "Delayed Reaction";
pub const VISIT_WITH_REACTION: &str = "Visit with Reaction";
pub const MAINTAIN_SAFE_SPACE: &str = "Maintain Safe Space";
pub const WAIT: &str = "Wait";

const REACTION_AXES: &[Axis] = &[Axis::Probabilistic, Axis::Modal, Axis::Triggered];
const REACTION_ROLES: &[Role] = &[one("condition", false), one("response", false)];

static CATALOGUE: [PatternTemplate; 15] = [
    PatternTemplate {
        name: "Maintain Mode In Hierarchy",
        category: Category::ModeSequencing,
        provenance: Provenance::Potential,
        variant_axes: &[],
        roles: &[],
        skeleton: None,
        ltl_schema: None,
    },
    PatternTemplate {
        name: PHASES,
        category: Category::ModeSequencing,
        provenance: Provenance::New,
        variant_axes: &[Axis::Modal],
        roles: &[many("phases", 2, true), many("conditions", 1, true)],
        skeleton: Some("upon p1 S shall eventually c1 + upon c1 S shall at the next timepoint p2 + upon p2 S shall eventually c2 ..."),
        ltl_schema: Some("((G ((!p1 & X p1) -> X F c1)) & (p1 -> F c1)) & ((G ((!c1 & X c1) -> X X p2)) & (c1 -> X p2)) ..."),
    },
    PatternTemplate {
        name: RECONNECT,
        category: Category::Communication,
        provenance: Provenance::New,
        variant_axes: &[Axis::Modal],
        roles: &[many("connections", 1, true), one("protocol", true)],
        skeleton: Some("whenever !k1 | ... | !kn S shall until (k1 & ... & kn) R"),
        ltl_schema: Some("G ((!k1 | ... | !kn) -> (R W (k1 & ... & kn)))"),
    },
    PatternTemplate {
        name: TRANSMIT,
        category: Category::Communication,
        provenance: Provenance::New,
        variant_axes: &[Axis::Modal],
        roles: &[many("connections", 1, true), many("data", 1, true), one("protocol", true)],
        skeleton: Some("whenever c1 & ... & cn & !d1 & ... & !dm S shall until (d1 & ... & dm) T"),
        ltl_schema: Some("G ((c1 & ... & cn & !d1 & ... & !dm) -> (T W (d1 & ... & dm)))"),
    },
    PatternTemplate {
        name: KEEP_OUT_ZONE,
        category: Category::Localisation,
        provenance: Provenance::New,
        variant_axes: &[Axis::Modal],
        roles: &[one("action", true), many("areas", 1, false)],
        skeleton: Some("whenever a S shall immediately !l1 & ... & !ln"),
        ltl_schema: Some("G (a -> (!l1 & ... & !ln))"),
    },
    PatternTemplate {
        name: STAY_IN_PERIMETER,
        category: Category::Localisation,
        provenance: Provenance::New,
        variant_axes: &[Axis::Modal],
        roles: &[one("action", true), many("areas", 1, false)],
        skeleton: Some("whenever a S shall immediately l1 & ... & ln"),
        ltl_schema: Some("G (a -> (l1 & ... & ln))"),
    },
    PatternTemplate {
        name: DELAYED_REACTION,
        category: Category::Reaction,
        provenance: Provenance::Prior2019,
        variant_axes: REACTION_AXES,
        roles: REACTION_ROLES,
        skeleton: Some("whenever c S shall eventually r"),
        ltl_schema: Some("G (c -> F r)"),
    },
    PatternTemplate {
        name: INSTANT_REACTION,
        category: Category::Reaction,
        provenance: Provenance::Prior2019,
        variant_axes: REACTION_AXES,
        roles: REACTION_ROLES,
        skeleton: Some("whenever c S shall immediately r"),
        ltl_schema: Some("G (c -> r)"),
    },
    PatternTemplate {
        name: PROMPT_REACTION,
        category: Category::Reaction,
        provenance: Provenance::Prior2019,
        variant_axes: REACTION_AXES,
        roles: REACTION_ROLES,
        skeleton: Some("whenever c S shall at the next timepoint r"),
        ltl_schema: Some("G (c -> X r)"),
    },
    PatternTemplate {
        name: VISIT_WITH_REACTION,
        category: Category::Reaction,
        provenance: Provenance::Prior2024,
        variant_axes: &[],
        roles: &[],
        skeleton: None,
        ltl_schema: None,
    },
    PatternTemplate {
        name: MAINTAIN_SAFE_SPACE,
        category: Category::Safety,
        provenance: Provenance::Prior2024,
        variant_axes: &[Axis::Probabilistic, Axis::Modal],
        roles: &[optional("condition"), one("response", false)],
        skeleton: Some("[whenever c] S shall always r"),
        ltl_schema: Some("G r | G (c -> G r)"),
    },
    PatternTemplate {
        name: "Conditional Wait",
        category: Category::Other,
        provenance: Provenance::Variant,
        variant_axes: &[],
        roles: &[],
        skeleton: None,
        ltl_schema: None,
    },
    PatternTemplate {
        name: "Modal Scheduling",
        category: Category::Other,
        provenance: Provenance::Potential,
        variant_axes: &[],
        roles: &[],
        skeleton: None,
        ltl_schema: None,
    },
    PatternTemplate {
        name: "Semi-Autonomous",
        category: Category::Other,
        provenance: Provenance::Potential,
        variant_axes: &[],
        roles: &[],
        skeleton: None,
        ltl_schema: None,
    },
    PatternTemplate {
        name: WAIT,
        category: Category::Other,
        provenance: Provenance::Prior2019,
        variant_axes: &[Axis::Modal],
        roles: &[one("condition", false), one("until", false), one("response", false)],
        skeleton: Some("whenever c S shall until q r"),
        ltl_schema: Some("G (c -> (r W q))"),
    },
];

/// Every catalogue entry, ordered by category and then name.
pub fn list_catalogue() -> &'static [PatternTemplate] {
    &CATALOGUE
}

pub fn template(name: &str) -> Option<&'static PatternTemplate> {
    CATALOGUE.iter().find(|t| t.name == name)
}

/// Labels that name a family rather than one template.
const EXTRA_LABELS: [&str; 1] = ["Modal Reaction"];

fn squash(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Canonical spelling of a pattern label: case and spacing are ignored.
/// Returns `None` for names that neither the catalogue nor its variants
/// produce.
pub fn canonical_name(name: &str) -> Option<String> {
    let wanted = squash(name);
    if let Some(extra) = EXTRA_LABELS.iter().find(|l| squash(l) == wanted) {
        return Some(extra.to_string());
    }
    for t in &CATALOGUE {
        if t.is_label_only() {
            if squash(t.name) == wanted {
                return Some(t.name.to_string());
            }
            continue;
        }
        let axes = t.variant_axes;
        for mask in 0..(1u8 << Axis::ALL.len()) {
            let chosen: Vec<Axis> = Axis::ALL
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| *a)
                .collect();
            if chosen.iter().all(|a| axes.contains(a)) {
                let candidate = variant_name(t.name, &chosen);
                if squash(&candidate) == wanted {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

/// Builds a variant label such as "Modal Triggered Instant Reaction".
pub fn variant_name(base: &str, axes: &[Axis]) -> String {
    let mut sorted = axes.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut words: Vec<&str> = sorted.iter().map(|a| a.prefix()).collect();
    words.push(base);
    words.join(" ")
}

/// Whether a classifier result satisfies a declared label. Identical names
/// agree; "Modal Reaction" accepts any modal reaction variant.
pub fn label_agrees(declared: &str, classified: &str) -> bool {
    let (Some(d), Some(c)) = (canonical_name(declared), canonical_name(classified)) else {
        return false;
    };
    if d == c {
        return true;
    }
    d == "Modal Reaction"
        && c.starts_with("Modal ")
        && [INSTANT_REACTION, PROMPT_REACTION, DELAYED_REACTION].iter().any(|b| c.ends_with(b))
}

impl fmt::Display for PatternTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        writeln!(f, "category: {}", self.category)?;
        writeln!(f, "provenance: {}", self.provenance)?;
        let axes: Vec<&str> = self.variant_axes.iter().map(|a| a.prefix()).collect();
        writeln!(f, "variants: {}", if axes.is_empty() { "-".to_string() } else { axes.join(", ") })?;
        writeln!(f, "skeleton: {}", self.skeleton.unwrap_or("label only"))?;
        write!(f, "ltl: {}", self.ltl_schema.unwrap_or("-"))
    }
}

/// The catalogue as a plain-text document, one block per entry.
pub fn export_catalogue() -> String {
    CATALOGUE.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n\n") + "\n"
}
