//! The table of script operations: binding kind, optional sub-operation
//! keyword, argument slots and result type.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ty {
    Point,
    HPoint,
    KPoint,
    SPoint,
    Line,
    Circle,
    Cline,
    HLine,
    HCircle,
    Bolyai,
    Number,
    Label,
}

impl Ty {
    pub fn as_str(self) -> &'static str {
        match self {
            Ty::Point => "point",
            Ty::HPoint => "hpoint",
            Ty::KPoint => "kpoint",
            Ty::SPoint => "spoint",
            Ty::Line => "line",
            Ty::Circle => "circle",
            Ty::Cline => "cline",
            Ty::HLine => "hline",
            Ty::HCircle => "hcircle",
            Ty::Bolyai => "bolyai",
            Ty::Number => "number",
            Ty::Label => "label",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    T(Ty),
    /// A number literal or a name bound to a number.
    Num,
    /// A nonnegative integer literal.
    Index,
    Tuple2,
    Tuple3,
    /// The literal word `a` or `b`.
    Side,
    /// Line, circle or cline.
    Curve,
    /// Circle, h-circle, or a cline that is a circle.
    Round,
    /// h-point or Klein point.
    ModelPoint,
}

impl Slot {
    pub fn describe(self) -> &'static str {
        match self {
            Slot::T(t) => t.as_str(),
            Slot::Num => "number",
            Slot::Index => "index",
            Slot::Tuple2 => "(x, y)",
            Slot::Tuple3 => "(x, y, z)",
            Slot::Side => "a|b",
            Slot::Curve => "line|circle|cline",
            Slot::Round => "circle|hcircle|cline",
            Slot::ModelPoint => "hpoint|kpoint",
        }
    }

    pub fn accepts(self, ty: Ty) -> bool {
        match self {
            Slot::T(t) => t == ty,
            Slot::Num => ty == Ty::Number,
            Slot::Curve => matches!(ty, Ty::Line | Ty::Circle | Ty::Cline),
            Slot::Round => matches!(ty, Ty::Circle | Ty::HCircle | Ty::Cline),
            Slot::ModelPoint => matches!(ty, Ty::HPoint | Ty::KPoint),
            Slot::Index | Slot::Tuple2 | Slot::Tuple3 | Slot::Side => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpSpec {
    pub id: &'static str,
    pub kind: &'static str,
    /// `None` for the form written without a sub-operation word.
    pub keyword: Option<&'static str>,
    pub args: &'static [Slot],
    pub ret: Ty,
}

/// Binding kinds. `measure` operations may also be written with the
/// operation name in place of the kind (`hdist d = P Q`).
pub const KINDS: [&str; 15] = [
    "point", "hpoint", "kpoint", "spoint", "line", "circle", "cline3", "invert", "hline",
    "hreflect", "hcircle", "klein", "poincare", "bolyai", "measure",
];

/// Names bound alongside a `bolyai` binding `B`, as `B.<suffix>`.
pub const BOLYAI_PARTS: [(&str, Ty); 11] = [
    ("q", Ty::HPoint),
    ("r", Ty::HPoint),
    ("t1", Ty::HPoint),
    ("t2", Ty::HPoint),
    ("m", Ty::HLine),
    ("n", Ty::HLine),
    ("k", Ty::HLine),
    ("l1", Ty::HLine),
    ("l2", Ty::HLine),
    ("gamma1", Ty::HCircle),
    ("gamma2", Ty::HCircle),
];

use Slot::*;
use Ty::*;

const P: Slot = T(Point);
const HP: Slot = T(HPoint);
const KP: Slot = T(KPoint);
const SP: Slot = T(SPoint);
const L: Slot = T(Line);
const C: Slot = T(Circle);
const HL: Slot = T(HLine);
const HC: Slot = T(HCircle);

macro_rules! op {
    ($id:literal, $kind:literal, None, [$($a:expr),*], $ret:expr) => {
        OpSpec { id: $id, kind: $kind, keyword: None, args: &[$($a),*], ret: $ret }
    };
    ($id:literal, $kind:literal, $kw:literal, [$($a:expr),*], $ret:expr) => {
        OpSpec { id: $id, kind: $kind, keyword: Some($kw), args: &[$($a),*], ret: $ret }
    };
}

pub const REGISTRY: &[OpSpec] = &[
    op!("point.literal", "point", None, [Tuple2], Point),
    op!("point.coords", "point", "coords", [ModelPoint], Point),
    op!("point.foot", "point", "foot", [P, L], Point),
    op!("point.reflect", "point", "reflect", [P, L], Point),
    op!("point.midpoint", "point", "midpoint", [P, P], Point),
    op!("point.circumcenter", "point", "circumcenter", [P, P, P], Point),
    op!("point.orthocenter", "point", "orthocenter", [P, P, P], Point),
    op!("point.centroid", "point", "centroid", [P, P, P], Point),
    op!("point.incenter", "point", "incenter", [P, P, P], Point),
    op!("point.bisector_foot", "point", "bisector_foot", [P, P, P], Point),
    op!("point.intersect", "point", "intersect", [Curve, Curve, Index], Point),
    op!("point.mobius", "point", "mobius", [P, P, P, P], Point),
    op!("point.central", "point", "central", [SP], Point),
    op!("point.stereo", "point", "stereo", [SP], Point),
    op!("point.ideal", "point", "ideal", [HL, Side], Point),
    op!("hpoint.literal", "hpoint", None, [Tuple2], HPoint),
    op!("hpoint.foot", "hpoint", "foot", [HP, HL], HPoint),
    op!("hpoint.intersect", "hpoint", "intersect", [HL, HL], HPoint),
    op!("kpoint.literal", "kpoint", None, [Tuple2], KPoint),
    op!("spoint.literal", "spoint", None, [Tuple3], SPoint),
    op!("spoint.dir", "spoint", "dir", [Tuple3], SPoint),
    op!("spoint.stereo", "spoint", "stereo", [P], SPoint),
    op!("spoint.midpoint", "spoint", "midpoint", [SP, SP], SPoint),
    op!("line.through", "line", None, [P, P], Line),
    op!("line.bisector", "line", "bisector", [P, P], Line),
    op!("line.perp", "line", "perp", [P, L], Line),
    op!("circle.center_radius", "circle", None, [P, Num], Circle),
    op!("circle.incircle", "circle", "incircle", [P, P, P], Circle),
    op!("circle.great", "circle", "great", [SP, SP], Cline),
    op!("circle.euclid", "circle", "euclid", [HC], Circle),
    op!("cline3.through", "cline3", None, [P, P, P], Cline),
    op!("invert.point", "invert", None, [P, C], Point),
    op!("invert.cline", "invert", None, [Curve, C], Cline),
    op!("hline.through", "hline", None, [HP, HP], HLine),
    op!("hline.ideal", "hline", "ideal", [Num, Num], HLine),
    op!("hline.perp", "hline", "perp", [HP, HL], HLine),
    op!("hline.parallel", "hline", "parallel", [HP, HL, Side], HLine),
    op!("hline.axis", "hline", "axis", [C], HLine),
    op!("hreflect.point", "hreflect", None, [HP, HL], HPoint),
    op!("hcircle.center_radius", "hcircle", None, [HP, Num], HCircle),
    op!("hcircle.ideal_incircle", "hcircle", "ideal_incircle", [Num, Num, Num], HCircle),
    op!("klein.from_poincare", "klein", None, [HP], KPoint),
    op!("poincare.from_klein", "poincare", None, [KP], HPoint),
    op!("bolyai.construct", "bolyai", None, [HL, HP], Bolyai),
    op!("measure.dist", "measure", "dist", [P, P], Number),
    op!("measure.d1", "measure", "d1", [P, P], Number),
    op!("measure.dinf", "measure", "dinf", [P, P], Number),
    op!("measure.angle", "measure", "angle", [P, P, P], Number),
    op!("measure.xcoord", "measure", "xcoord", [P], Number),
    op!("measure.ycoord", "measure", "ycoord", [P], Number),
    op!("measure.radius", "measure", "radius", [Round], Number),
    op!("measure.tangent_length", "measure", "tangent_length", [P, P, P], Number),
    op!("measure.cross_ratio", "measure", "cross_ratio", [P, P, P, P], Number),
    op!("measure.cratio_re", "measure", "cratio_re", [P, P, P, P], Number),
    op!("measure.cratio_im", "measure", "cratio_im", [P, P, P, P], Number),
    op!("measure.ptolemy", "measure", "ptolemy", [P, P, P, P], Number),
    op!("measure.hdist", "measure", "hdist", [HP, HP], Number),
    op!("measure.hdist0", "measure", "hdist0", [Num], Number),
    op!("measure.hangle", "measure", "hangle", [HP, HP, HP], Number),
    op!("measure.hline_dist", "measure", "hline_dist", [HP, HL], Number),
    op!("measure.hradius", "measure", "hradius", [HC], Number),
    op!("measure.defect", "measure", "defect", [HP, HP, HP], Number),
    op!("measure.hpyth", "measure", "hpyth", [HP, HP, HP], Number),
    op!("measure.conformal", "measure", "conformal", [HP], Number),
    op!("measure.circumference", "measure", "circumference", [Num], Number),
    op!("measure.parallelism", "measure", "parallelism", [Num], Number),
    op!("measure.parallel_dist", "measure", "parallel_dist", [Num], Number),
    op!("measure.equidistance", "measure", "equidistance", [C], Number),
    op!("measure.idealgap", "measure", "idealgap", [HL, HL], Number),
    op!("measure.kdist", "measure", "kdist", [KP, KP], Number),
    op!("measure.sdist", "measure", "sdist", [SP, SP], Number),
    op!("measure.sangle", "measure", "sangle", [SP, SP, SP], Number),
    op!("measure.excess", "measure", "excess", [SP, SP, SP], Number),
    op!("measure.spyth", "measure", "spyth", [SP, SP, SP], Number),
    op!("measure.sconformal", "measure", "sconformal", [P], Number),
    op!("measure.classify", "measure", "classify", [C], Label),
    op!("measure.tangency", "measure", "tangency", [C, C], Label),
    op!("measure.inscribed", "measure", "inscribed", [P, P, P, P], Label),
    op!("measure.perpendicular", "measure", "perpendicular", [Curve, Curve], Label),
    op!("measure.same_side", "measure", "same_side", [L, P, P], Label),
];

pub fn by_id(id: &str) -> Option<&'static OpSpec> {
    REGISTRY.iter().find(|s| s.id == id)
}

/// Forms of `kind` introduced by `keyword`.
pub fn forms<'a>(kind: &'a str, keyword: Option<&'a str>) -> impl Iterator<Item = &'static OpSpec> + 'a {
    REGISTRY
        .iter()
        .filter(move |s| s.kind == kind && s.keyword == keyword)
}

pub fn is_keyword(kind: &str, word: &str) -> bool {
    REGISTRY
        .iter()
        .any(|s| s.kind == kind && s.keyword == Some(word))
}

pub fn is_measure(word: &str) -> bool {
    is_keyword("measure", word)
}

/// Words that cannot be used as binding names.
pub fn is_reserved(word: &str) -> bool {
    KINDS.contains(&word)
        || REGISTRY.iter().any(|s| s.keyword == Some(word))
        || super::ast::Func::from_name(word).is_some()
        || matches!(
            word,
            "pi" | "assert_eq" | "tol" | "render" | "model" | "width"
        )
}
