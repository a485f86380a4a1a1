//! Static SVG drawing of the Γ₀(p) region. Coordinates are rounded to
//! whole pixels with integer arithmetic.

use std::fmt::Write;

use gammaforms_core::arith::isqrt;
use gammaforms_core::fundomain::RegionBoundary;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

const UNIT: i64 = 800;
const MARGIN: i64 = 40;
// height of the drawing above the real axis, in units of 1/8
const TOP_EIGHTHS: i64 = 9;

fn px_x(re: &BigRational) -> i64 {
    let v = (re + BigRational::new(1.into(), 2.into())) * BigRational::from(BigInt::from(UNIT));
    MARGIN + v.round().to_integer().to_i64().expect("small coordinate")
}

fn px_y_from_im_sq(im_sq: &BigRational) -> i64 {
    // pixel height = UNIT·√(im²), rounded down
    let scaled = im_sq * BigRational::from(BigInt::from(UNIT * UNIT));
    let h = isqrt(&scaled.floor().to_integer()).to_i64().expect("small coordinate");
    MARGIN + UNIT * TOP_EIGHTHS / 8 - h
}

fn im_sq_on_circle(center: &BigRational, radius: &BigRational, re: &BigRational) -> BigRational {
    let dx = re - center;
    radius * radius - &dx * &dx
}

pub fn render(b: &RegionBoundary) -> String {
    let width = UNIT + 2 * MARGIN;
    let height = UNIT * TOP_EIGHTHS / 8 + 2 * MARGIN;
    let axis = MARGIN + UNIT * TOP_EIGHTHS / 8;
    let top = MARGIN;
    let r_px = UNIT / b.p;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#);
    let _ = writeln!(s, r#"<title>Fundamental region for Gamma0({})</title>"#, b.p);
    let _ = writeln!(s, r##"<line x1="0" y1="{axis}" x2="{width}" y2="{axis}" stroke="#999" stroke-width="1"/>"##);

    let mut path = String::new();
    let left = &b.lines[0];
    let right = &b.lines[1];
    let first = &b.arcs[0];
    let _ = write!(path, "M {} {}", px_x(left), top);
    let _ = write!(path, " L {} {}", px_x(left), px_y_from_im_sq(&im_sq_on_circle(&first.center, &first.radius, left)));
    for arc in &b.arcs {
        let end = px_y_from_im_sq(&im_sq_on_circle(&arc.center, &arc.radius, &arc.to_re));
        if arc.from_re != arc.to_re {
            let start = px_y_from_im_sq(&im_sq_on_circle(&arc.center, &arc.radius, &arc.from_re));
            let _ = write!(path, " L {} {}", px_x(&arc.from_re), start);
        }
        let _ = write!(path, " A {r_px} {r_px} 0 0 1 {} {}", px_x(&arc.to_re), end);
    }
    let _ = write!(path, " L {} {} Z", px_x(right), top);
    let _ = writeln!(s, r##"<path d="{path}" fill="#dde8f4" stroke="#1f4e79" stroke-width="2"/>"##);

    for arc in &b.arcs {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
            px_x(&arc.center),
            axis + 16,
            arc.k
        );
    }
    s.push_str("</svg>\n");
    s
}
