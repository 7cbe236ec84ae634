//! C ABI over the cvxfun toolkit.
//!
//! Cones, bodies and moment pencils cross the boundary as opaque handles,
//! created from and serialized to the same JSON documents the command line
//! uses. Every fallible call returns a [`CvxfunStatus`]; on failure the
//! message is available from [`cvxfun_last_error`] on the same thread.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`cvxfun_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cvxfun::caps::Caps;
use cvxfun::cones::{body_product, dual_cone, ConvexBody, PolyCone};
use cvxfun::functors::{hom_cone, schur_body, sym_body, tensor_body, tensor_cone, Partition};
use cvxfun::io::{body_doc, cone_doc, parse_body, parse_cone, parse_map, parse_measure, parse_pencil, parse_vec, pencil_doc, Document};
use cvxfun::linearizer::{brute_force_max, linearize_sym, linearize_tensor, lp_max_over_body};
use cvxfun::moments::{assemble_pencil, qk_maximize, qk_membership, MomentPencil, PolyMap};
use cvxfun::qlinalg::{parse_rational, QVector};
use cvxfun::verify::{report_json, verify_examples};
use cvxfun::Error;

/// Result codes; `CVXFUN_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvxfunStatus {
    Ok = 0,
    Dimension = 1,
    Input = 2,
    NotPointed = 3,
    NotFullDimensional = 4,
    SizeCap = 5,
    ZeroFunctor = 6,
    Numerical = 7,
    Validation = 8,
    Parse = 9,
    NullPointer = 10,
    InvalidUtf8 = 11,
    Panic = 12,
}

impl From<&Error> for CvxfunStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Dimension(_) => CvxfunStatus::Dimension,
            Error::Input(_) => CvxfunStatus::Input,
            Error::NotPointed { .. } => CvxfunStatus::NotPointed,
            Error::NotFullDimensional { .. } => CvxfunStatus::NotFullDimensional,
            Error::SizeCap(_) => CvxfunStatus::SizeCap,
            Error::ZeroFunctor(_) => CvxfunStatus::ZeroFunctor,
            Error::Numerical(_) => CvxfunStatus::Numerical,
            Error::Validation(_) => CvxfunStatus::Validation,
            Error::Parse(_) => CvxfunStatus::Parse,
        }
    }
}

/// Opaque polyhedral cone.
pub struct CvxfunCone(PolyCone);
/// Opaque convex polytope containing the origin in its interior.
pub struct CvxfunBody(ConvexBody);
/// Opaque moment pencil.
pub struct CvxfunPencil(MomentPencil);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Core(Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type FfiResult<T> = std::result::Result<T, Failure>;

fn guard<F: FnOnce() -> FfiResult<()>>(f: F) -> CvxfunStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CvxfunStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            CvxfunStatus::from(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer passed for {what}"));
            CvxfunStatus::NullPointer
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_error(format!("{what} is not valid UTF-8"));
            CvxfunStatus::InvalidUtf8
        }
        Err(_) => {
            set_error("internal panic".into());
            CvxfunStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &'static str) -> FfiResult<&'a T> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = CString::new(s).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

fn caps() -> FfiResult<Caps> {
    Ok(Caps::from_env()?)
}

fn json_vec(s: &str) -> FfiResult<QVector> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(parse_vec(&v)?)
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cvxfun_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cvxfun_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from a `char **` out-parameter of this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a nul-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_cone_from_json(json: *const c_char, out: *mut *mut CvxfunCone) -> CvxfunStatus {
    guard(|| {
        let d = Document::parse(str_arg(json, "json")?)?;
        put(out, CvxfunCone(parse_cone(&d)?))
    })
}

/// # Safety
/// `c` must be a live cone handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_cone_to_json(c: *const CvxfunCone, out: *mut *mut c_char) -> CvxfunStatus {
    guard(|| put_string(out, cone_doc(&ref_arg(c, "cone")?.0).to_canonical_string()))
}

/// # Safety
/// `c` must be a cone handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_cone_free(c: *mut CvxfunCone) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `c` must be a live cone handle or null.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_cone_dim(c: *const CvxfunCone) -> usize {
    c.as_ref().map_or(0, |c| c.0.dim())
}

/// Number of extreme rays, or 0 for a null handle.
///
/// # Safety
/// `c` must be a live cone handle or null.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_cone_num_rays(c: *const CvxfunCone) -> usize {
    c.as_ref().map_or(0, |c| c.0.rays().len())
}

/// # Safety
/// `a`, `b` must be live cone handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_cone_tensor(a: *const CvxfunCone, b: *const CvxfunCone, out: *mut *mut CvxfunCone) -> CvxfunStatus {
    guard(|| put(out, CvxfunCone(tensor_cone(&ref_arg(a, "a")?.0, &ref_arg(b, "b")?.0)?)))
}

/// # Safety
/// `a`, `b` must be live cone handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_cone_hom(a: *const CvxfunCone, b: *const CvxfunCone, out: *mut *mut CvxfunCone) -> CvxfunStatus {
    guard(|| put(out, CvxfunCone(hom_cone(&ref_arg(a, "a")?.0, &ref_arg(b, "b")?.0)?)))
}

/// # Safety
/// `c` must be a live cone handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_cone_dual(c: *const CvxfunCone, out: *mut *mut CvxfunCone) -> CvxfunStatus {
    guard(|| put(out, CvxfunCone(dual_cone(&ref_arg(c, "cone")?.0))))
}

/// # Safety
/// `json` must be a nul-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_from_json(json: *const c_char, out: *mut *mut CvxfunBody) -> CvxfunStatus {
    guard(|| {
        let d = Document::parse(str_arg(json, "json")?)?;
        put(out, CvxfunBody(parse_body(&d)?))
    })
}

/// # Safety
/// `p` must be a live body handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_to_json(p: *const CvxfunBody, out: *mut *mut c_char) -> CvxfunStatus {
    guard(|| put_string(out, body_doc(&ref_arg(p, "body")?.0).to_canonical_string()))
}

/// # Safety
/// `p` must be a body handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_free(p: *mut CvxfunBody) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live body handle or null.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_dim(p: *const CvxfunBody) -> usize {
    p.as_ref().map_or(0, |p| p.0.dim())
}

/// # Safety
/// `p` must be a live body handle or null.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_num_vertices(p: *const CvxfunBody) -> usize {
    p.as_ref().map_or(0, |p| p.0.vertices().len())
}

/// # Safety
/// `a`, `b` must be live body handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_tensor(a: *const CvxfunBody, b: *const CvxfunBody, out: *mut *mut CvxfunBody) -> CvxfunStatus {
    guard(|| {
        let t = tensor_body(&ref_arg(a, "a")?.0, &ref_arg(b, "b")?.0, &caps()?)?;
        put(out, CvxfunBody(t.body))
    })
}

/// # Safety
/// `p` must be a live body handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_sym(p: *const CvxfunBody, n: usize, out: *mut *mut CvxfunBody) -> CvxfunStatus {
    guard(|| {
        let s = sym_body(&ref_arg(p, "body")?.0, n, &caps()?)?;
        put(out, CvxfunBody(s.body))
    })
}

/// Schur functor for the partition `shape[0] ≥ shape[1] ≥ …`.
///
/// # Safety
/// `p` must be a live body handle, `shape` point to `len` entries, `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_schur(
    p: *const CvxfunBody,
    shape: *const usize,
    len: usize,
    out: *mut *mut CvxfunBody,
) -> CvxfunStatus {
    guard(|| {
        if shape.is_null() {
            return Err(Failure::Null("shape"));
        }
        let parts = std::slice::from_raw_parts(shape, len).to_vec();
        let lambda = Partition::new(parts)?;
        let s = schur_body(&ref_arg(p, "body")?.0, &lambda, &caps()?)?;
        put(out, CvxfunBody(s.body))
    })
}

/// # Safety
/// `p` must be a live body handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_polar(p: *const CvxfunBody, out: *mut *mut CvxfunBody) -> CvxfunStatus {
    guard(|| put(out, CvxfunBody(ref_arg(p, "body")?.0.polar()?)))
}

/// # Safety
/// `a`, `b` must be live body handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_body_product(a: *const CvxfunBody, b: *const CvxfunBody, out: *mut *mut CvxfunBody) -> CvxfunStatus {
    guard(|| put(out, CvxfunBody(body_product(&ref_arg(a, "a")?.0, &ref_arg(b, "b")?.0)?)))
}

/// Linearize an objective document over one body (symmetric) or two
/// (bilinear) and report the LP optimum and the brute-force maximum as JSON.
///
/// # Safety
/// `objective_json` must be nul-terminated; `bodies` must point to `count`
/// live body handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_linearize(
    objective_json: *const c_char,
    bodies: *const *const CvxfunBody,
    count: usize,
    out: *mut *mut c_char,
) -> CvxfunStatus {
    guard(|| {
        let t = cvxfun::io::parse_objective(&Document::parse(str_arg(objective_json, "objective_json")?)?)?;
        if bodies.is_null() {
            return Err(Failure::Null("bodies"));
        }
        let ps: Vec<&ConvexBody> = std::slice::from_raw_parts(bodies, count)
            .iter()
            .map(|&b| ref_arg(b, "body").map(|b| &b.0))
            .collect::<FfiResult<_>>()?;
        let caps = caps()?;
        let (f, body) = match ps.as_slice() {
            [p] => {
                let (f, s) = linearize_sym(&t, p, &caps)?;
                (f, s.body)
            }
            [p, q] => {
                let (f, tb) = linearize_tensor(&t, p, q, &caps)?;
                (f, tb.body)
            }
            _ => return Err(Error::Input(format!("expected 1 or 2 bodies, got {count}")).into()),
        };
        let (lp, _) = lp_max_over_body(&f.linear, &body)?;
        let lp = lp + &f.constant;
        let lists: Vec<&[QVector]> = if ps.len() == 1 {
            vec![ps[0].vertices(); t.order()]
        } else {
            ps.iter().map(|p| p.vertices()).collect()
        };
        let (bf, _) = brute_force_max(&t, &lists, &caps)?;
        let report = serde_json::json!({
            "lp_value": cvxfun::io::q_json(&lp),
            "brute_force_value": cvxfun::io::q_json(&bf),
            "equal": lp == bf,
        });
        put_string(out, cvxfun::io::canonical_string(&report))
    })
}

/// Assemble the degree-`k` moment pencil of a measure (JSON) pushed through
/// a polynomial map (JSON, or null for the identity).
///
/// # Safety
/// `measure_json` must be nul-terminated, `map_json` nul-terminated or null,
/// `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_pencil_assemble(
    measure_json: *const c_char,
    map_json: *const c_char,
    k: u32,
    out: *mut *mut CvxfunPencil,
) -> CvxfunStatus {
    guard(|| {
        let parse = |s: &str| serde_json::from_str::<serde_json::Value>(s).map_err(|e| Error::Parse(e.to_string()));
        let m = parse_measure(&parse(str_arg(measure_json, "measure_json")?)?)?;
        let t = if map_json.is_null() {
            PolyMap::identity(m.nvars())
        } else {
            parse_map(&parse(str_arg(map_json, "map_json")?)?)?
        };
        put(out, CvxfunPencil(assemble_pencil(&m, &t, k, &caps()?)?))
    })
}

/// # Safety
/// `json` must be a nul-terminated pencil document; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_pencil_from_json(json: *const c_char, out: *mut *mut CvxfunPencil) -> CvxfunStatus {
    guard(|| {
        let d = Document::parse(str_arg(json, "json")?)?;
        put(out, CvxfunPencil(parse_pencil(&d)?))
    })
}

/// # Safety
/// `p` must be a live pencil handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_pencil_to_json(p: *const CvxfunPencil, out: *mut *mut c_char) -> CvxfunStatus {
    guard(|| put_string(out, pencil_doc(&ref_arg(p, "pencil")?.0).to_canonical_string()))
}

/// # Safety
/// `p` must be a pencil handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_pencil_free(p: *mut CvxfunPencil) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Exact membership of λ (JSON array of rationals) in the pencil's spectrahedron.
///
/// # Safety
/// `p` must be a live pencil handle, `lambda_json` nul-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_pencil_member(p: *const CvxfunPencil, lambda_json: *const c_char, out: *mut bool) -> CvxfunStatus {
    guard(|| {
        let lambda = json_vec(str_arg(lambda_json, "lambda_json")?)?;
        let r = qk_membership(&ref_arg(p, "pencil")?.0, &lambda)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = r;
        Ok(())
    })
}

/// Certified bracket `lower ≤ max ⟨c, λ⟩ ≤ upper` over the spectrahedron
/// intersected with the box `[−box_bound, box_bound]`.
///
/// # Safety
/// `p` must be a live pencil handle, `c_json` and `box_bound` nul-terminated,
/// `upper` and `lower` valid.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_pencil_maximize(
    p: *const CvxfunPencil,
    c_json: *const c_char,
    box_bound: *const c_char,
    tol: f64,
    upper: *mut f64,
    lower: *mut f64,
) -> CvxfunStatus {
    guard(|| {
        let c = json_vec(str_arg(c_json, "c_json")?)?;
        let r = parse_rational(str_arg(box_bound, "box_bound")?)?;
        let res = qk_maximize(&ref_arg(p, "pencil")?.0, &c, &r, tol)?;
        if upper.is_null() || lower.is_null() {
            return Err(Failure::Null("upper/lower"));
        }
        *upper = res.value;
        *lower = res.lower;
        Ok(())
    })
}

/// Run the worked-example suite; writes the JSON report and whether every
/// item passed.
///
/// # Safety
/// `report` and `passed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cvxfun_verify_examples(report: *mut *mut c_char, passed: *mut bool) -> CvxfunStatus {
    guard(|| {
        let items = verify_examples(None, &caps()?)?;
        if passed.is_null() {
            return Err(Failure::Null("passed"));
        }
        *passed = items.iter().all(|i| i.passed);
        put_string(report, cvxfun::io::canonical_string(&report_json(&items)))
    })
}
