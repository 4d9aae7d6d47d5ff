//! C ABI over `lmrttg`.
//!
//! Every fallible call returns an [`LmrttgStatus`]; on failure the message is
//! available from [`lmrttg_last_error`] on the same thread. Graphs are opaque
//! handles released with [`lmrttg_graph_free`]; strings returned through out
//! pointers are released with [`lmrttg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lmrttg::classification::{classify, PairSign};
use lmrttg::constructions::{build_family, build_g, build_h, FamilyTag};
use lmrttg::graph::{Graph, GraphJson, TwoTerminalGraph};
use lmrttg::invariants::invariant_bundle;
use lmrttg::reliability::{n_vector, parse_rational, reliability_at};
use lmrttg::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LmrttgStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    SizeBound = 3,
    DoesNotExist = 4,
    Parse = 5,
    BufferTooSmall = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LmrttgFamily {
    C1 = 0,
    C2 = 1,
    C3 = 2,
    S1 = 3,
    S2 = 4,
    S3 = 5,
}

impl From<LmrttgFamily> for FamilyTag {
    fn from(f: LmrttgFamily) -> Self {
        match f {
            LmrttgFamily::C1 => FamilyTag::C1,
            LmrttgFamily::C2 => FamilyTag::C2,
            LmrttgFamily::C3 => FamilyTag::C3,
            LmrttgFamily::S1 => FamilyTag::S1,
            LmrttgFamily::S2 => FamilyTag::S2,
            LmrttgFamily::S3 => FamilyTag::S3,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LmrttgSign {
    /// `n < 5`.
    None = 0,
    Plus = 1,
    Minus = 2,
    Star = 3,
}

/// Opaque graph handle, optionally carrying terminals.
pub struct LmrttgGraph {
    graph: Graph,
    terminals: Option<(usize, usize)>,
}

impl LmrttgGraph {
    fn two_terminal(&self) -> Result<TwoTerminalGraph, Error> {
        let (s, t) = self
            .terminals
            .ok_or_else(|| Error::Domain("graph has no terminals".into()))?;
        TwoTerminalGraph::new(self.graph.clone(), s, t)
    }

    fn to_json(&self) -> GraphJson {
        match self.two_terminal() {
            Ok(g) => g.to_json(),
            Err(_) => self.graph.to_json(),
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LmrttgInvariants {
    pub n: u64,
    pub m: i64,
    pub m1: i64,
    pub m2: i64,
    pub k3: i64,
    pub p3: i64,
    pub p4: i64,
    pub h: i64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LmrttgClass {
    pub in_i: bool,
    pub in_j: bool,
    pub sign: LmrttgSign,
    pub m1_s1: i64,
    pub m1_c1: i64,
    pub k: u64,
    pub j: u64,
    pub kp: u64,
    pub jp: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LmrttgStatus {
    match e {
        Error::Domain(_) => LmrttgStatus::Domain,
        Error::SizeBound { .. } => LmrttgStatus::SizeBound,
        Error::DoesNotExist { .. } => LmrttgStatus::DoesNotExist,
        Error::Parse(_) | Error::Json(_) => LmrttgStatus::Parse,
        Error::Internal(_) | Error::Io(_) => LmrttgStatus::Internal,
    }
}

struct Fail(LmrttgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(LmrttgStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LmrttgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LmrttgStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside lmrttg".into());
            LmrttgStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const LmrttgGraph) -> Result<&'a LmrttgGraph, Fail> {
    g.as_ref().ok_or_else(|| null("graph"))
}

unsafe fn put_graph(out: *mut *mut LmrttgGraph, g: LmrttgGraph) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(g));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| Fail(LmrttgStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn narrow(x: i128, what: &str) -> Result<i64, Fail> {
    i64::try_from(x).map_err(|_| Fail(LmrttgStatus::SizeBound, format!("{what} does not fit in 64 bits")))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn lmrttg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_build_g(n: u64, m: u64, out: *mut *mut LmrttgGraph) -> LmrttgStatus {
    guard(|| {
        let g = build_g(n, m)?;
        let terminals = Some(g.terminals());
        put_graph(out, LmrttgGraph { graph: g.graph().clone(), terminals })
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_build_h(n: u64, m: u64, out: *mut *mut LmrttgGraph) -> LmrttgStatus {
    guard(|| {
        let h = build_h(n, m)?;
        put_graph(out, LmrttgGraph { graph: h.graph, terminals: None })
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_build_family(
    n: u64,
    m: u64,
    family: LmrttgFamily,
    out: *mut *mut LmrttgGraph,
) -> LmrttgStatus {
    guard(|| {
        let g = build_family(n, m, family.into())?;
        put_graph(out, LmrttgGraph { graph: g, terminals: None })
    })
}

/// Parses the JSON graph format: `{"n": 4, "terminals": [0, 1], "edges": [[0, 1], ..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_graph_from_json(json: *const c_char, out: *mut *mut LmrttgGraph) -> LmrttgStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Fail(LmrttgStatus::Parse, e.to_string()))?;
        let parsed = GraphJson::parse(text)?;
        let graph = parsed.to_graph()?;
        let terminals = match parsed.terminals {
            Some([s, t]) => {
                TwoTerminalGraph::new(graph.clone(), s, t)?;
                Some((s, t))
            }
            None => None,
        };
        put_graph(out, LmrttgGraph { graph, terminals })
    })
}

/// # Safety
/// `g` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_graph_free(g: *mut LmrttgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be a live handle; `n` and `m` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_graph_size(g: *const LmrttgGraph, n: *mut usize, m: *mut usize) -> LmrttgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if n.is_null() || m.is_null() {
            return Err(null("out"));
        }
        *n = g.graph.n();
        *m = g.graph.edge_count();
        Ok(())
    })
}

/// Terminals of a two-terminal graph; `Domain` when the graph has none.
///
/// # Safety
/// `g` must be a live handle; `s` and `t` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_graph_terminals(g: *const LmrttgGraph, s: *mut usize, t: *mut usize) -> LmrttgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if s.is_null() || t.is_null() {
            return Err(null("out"));
        }
        let (a, b) = g.two_terminal()?.terminals();
        *s = a;
        *t = b;
        Ok(())
    })
}

/// Writes edges as `u0, v0, u1, v1, ..` into `buf` (room for `cap` edges) and
/// the edge count into `written`. With too little room nothing is copied,
/// `written` holds the needed count and `BufferTooSmall` is returned.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `2 * cap` values; `written`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_graph_edges(
    g: *const LmrttgGraph,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> LmrttgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if written.is_null() {
            return Err(null("written"));
        }
        let edges = g.graph.edges();
        *written = edges.len();
        if edges.len() > cap {
            return Err(Fail(
                LmrttgStatus::BufferTooSmall,
                format!("{} edges, room for {cap}", edges.len()),
            ));
        }
        if !edges.is_empty() && buf.is_null() {
            return Err(null("buf"));
        }
        for (i, (u, v)) in edges.into_iter().enumerate() {
            *buf.add(2 * i) = u as u32;
            *buf.add(2 * i + 1) = v as u32;
        }
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes. Free the
/// result with [`lmrttg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lmrttg_graph_to_json(g: *const LmrttgGraph, out: *mut *mut c_char) -> LmrttgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let text = serde_json::to_string(&g.to_json()).map_err(Error::from)?;
        put_string(out, text)
    })
}

/// # Safety
/// As for [`lmrttg_graph_to_json`].
#[no_mangle]
pub unsafe extern "C" fn lmrttg_graph_to_dot(g: *const LmrttgGraph, out: *mut *mut c_char) -> LmrttgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let text = match g.two_terminal() {
            Ok(t) => t.to_dot(),
            Err(_) => g.graph.to_dot(),
        };
        put_string(out, text)
    })
}

/// Canonical key as `n:hex`; terminals are respected as an unordered pair.
///
/// # Safety
/// As for [`lmrttg_graph_to_json`].
#[no_mangle]
pub unsafe extern "C" fn lmrttg_graph_canonical_key(g: *const LmrttgGraph, out: *mut *mut c_char) -> LmrttgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let key = match g.two_terminal() {
            Ok(t) => t.canonical_key()?,
            Err(_) => g.graph.canonical_key()?,
        };
        put_string(out, key.to_string())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_invariants(g: *const LmrttgGraph, out: *mut LmrttgInvariants) -> LmrttgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let b = invariant_bundle(&g.graph);
        *out = LmrttgInvariants {
            n: b.n as u64,
            m: b.m,
            m1: b.m1,
            m2: b.m2,
            k3: b.k3,
            p3: b.p3,
            p4: b.p4,
            h: b.h_value,
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_classify(n: u64, m: u64, out: *mut LmrttgClass) -> LmrttgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let c = classify(n, m)?;
        *out = LmrttgClass {
            in_i: c.in_i,
            in_j: c.in_j,
            sign: match c.sign {
                None => LmrttgSign::None,
                Some(PairSign::Plus) => LmrttgSign::Plus,
                Some(PairSign::Minus) => LmrttgSign::Minus,
                Some(PairSign::Star) => LmrttgSign::Star,
            },
            m1_s1: narrow(c.m1_s1, "M1(S1)")?,
            m1_c1: narrow(c.m1_c1, "M1(C1)")?,
            k: c.params.k,
            j: c.params.j,
            kp: c.params.kp,
            jp: c.params.jp,
        };
        Ok(())
    })
}

/// `N_1 .. N_m` of a two-terminal graph into `buf` (room for `cap` values),
/// with the same size protocol as [`lmrttg_graph_edges`].
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `cap` values; `written` must
/// be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lmrttg_n_vector(
    g: *const LmrttgGraph,
    buf: *mut u64,
    cap: usize,
    written: *mut usize,
) -> LmrttgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if written.is_null() {
            return Err(null("written"));
        }
        let nv = n_vector(&g.two_terminal()?)?;
        *written = nv.len();
        if nv.len() > cap {
            return Err(Fail(
                LmrttgStatus::BufferTooSmall,
                format!("{} coefficients, room for {cap}", nv.len()),
            ));
        }
        if !nv.is_empty() && buf.is_null() {
            return Err(null("buf"));
        }
        for (i, c) in nv.counts().iter().enumerate() {
            *buf.add(i) = u64::try_from(c).map_err(|_| Fail(LmrttgStatus::SizeBound, "coefficient exceeds 64 bits".into()))?;
        }
        Ok(())
    })
}

/// Exact two-terminal reliability at `p` (`"a/b"`), written as `"a/b"`.
///
/// # Safety
/// `g` must be a live handle; `p` a NUL-terminated string; `out` valid for
/// writes. Free the result with [`lmrttg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lmrttg_reliability(
    g: *const LmrttgGraph,
    p: *const c_char,
    out: *mut *mut c_char,
) -> LmrttgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if p.is_null() {
            return Err(null("p"));
        }
        let p = CStr::from_ptr(p)
            .to_str()
            .map_err(|e| Fail(LmrttgStatus::Parse, e.to_string()))?;
        let value = reliability_at(&g.two_terminal()?, &parse_rational(p)?)?;
        put_string(out, value.to_string())
    })
}
