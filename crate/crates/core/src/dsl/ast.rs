use crate::field::Rational;
use crate::group::Perm;
use crate::word::FreeElement;
use crate::Pos;

/// Source position attached to a declaration. Spans never take part in
/// equality, so documents compare structurally.
#[derive(Clone, Copy, Debug)]
pub struct Span(pub Pos);

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl Default for Span {
    fn default() -> Self {
        Span(Pos { line: 0, col: 0 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpecDocument {
    pub group: Option<GroupDecl>,
    pub module: Option<ModuleDecl>,
    pub algebra: Option<AlgebraDecl>,
    pub coideals: Vec<CoidealDecl>,
    pub tasks: Vec<TaskDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDecl {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub basis: Vec<BasisDecl>,
    pub actions: Vec<ActionDecl>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisDecl {
    pub label: String,
    pub degree: Perm,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionDecl {
    pub generator: Perm,
    pub images: ActionImages,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionImages {
    /// `label -> ±label` pairs, indices into the basis.
    Signed(Vec<(usize, bool, usize)>),
    /// Row `b` is the image of basis vector `b`.
    Matrix(Vec<Vec<Rational>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDecl {
    pub name: String,
    pub module: String,
    pub relations: Vec<RelationDecl>,
    pub truncate: usize,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDecl {
    pub expr: FreeElement<Rational>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoidealDecl {
    pub name: String,
    pub generators: Vec<RelationDecl>,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Check,
    Hilbert,
    Decompose,
    Canmap,
    Freeness,
    Hopfmod,
}

impl TaskKind {
    pub fn keyword(self) -> &'static str {
        match self {
            TaskKind::Check => "check",
            TaskKind::Hilbert => "hilbert",
            TaskKind::Decompose => "decompose",
            TaskKind::Canmap => "canmap",
            TaskKind::Freeness => "freeness",
            TaskKind::Hopfmod => "hopfmod",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "check" => TaskKind::Check,
            "hilbert" => TaskKind::Hilbert,
            "decompose" => TaskKind::Decompose,
            "canmap" => TaskKind::Canmap,
            "freeness" => TaskKind::Freeness,
            "hopfmod" => TaskKind::Hopfmod,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskDecl {
    pub kind: TaskKind,
    pub args: Vec<String>,
    pub span: Span,
}

impl SpecDocument {
    pub fn labels(&self) -> Vec<String> {
        self.module
            .as_ref()
            .map(|m| m.basis.iter().map(|b| b.label.clone()).collect())
            .unwrap_or_default()
    }

    pub fn coideal(&self, name: &str) -> Option<&CoidealDecl> {
        self.coideals.iter().find(|c| c.name == name)
    }
}
