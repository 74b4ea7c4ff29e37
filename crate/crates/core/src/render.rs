//! Deterministic plain-text and LaTeX rendering of normalized fractions.
//! Term order is graded lexicographic throughout, so identical inputs always
//! print identically.

use crate::laurent::LaurentPoly;
use crate::numeric::{Int, Rat};
use crate::ratfun::{LinForm, NormalForm, TopNormal};
use num::{One, Signed, Zero};

fn var_name(i: usize, nvars: usize) -> String {
    if i == 0 {
        "q".into()
    } else if nvars == 2 {
        "T".into()
    } else {
        format!("t{}", i)
    }
}

fn s_name(j: usize, m: usize) -> String {
    if m == 1 {
        "s".into()
    } else {
        format!("s{}", j + 1)
    }
}

fn monomial_text(exp: &[i64], nvars: usize, latex: bool) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exp.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let v = var_name(i, nvars);
        if e == 1 {
            parts.push(v);
        } else if latex {
            parts.push(format!("{}^{{{}}}", v, e));
        } else {
            parts.push(format!("{}^{}", v, e));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else if latex {
        parts.join(" ")
    } else {
        parts.join("*")
    }
}

fn coeff_prefix(c: &Rat, latex: bool) -> (bool, String) {
    // (negative?, magnitude text without sign; empty for 1)
    let neg = c.is_negative();
    let a = c.abs();
    let text = if a.is_one() {
        String::new()
    } else if a.is_integer() {
        a.numer().to_string()
    } else if latex {
        format!("\\tfrac{{{}}}{{{}}}", a.numer(), a.denom())
    } else {
        format!("{}/{}", a.numer(), a.denom())
    };
    (neg, text)
}

/// Graded-lexicographic polynomial rendering.
pub fn poly_text(p: &LaurentPoly, names: &dyn Fn(usize) -> String, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&Vec<i64>, &Rat)> = p.terms.iter().collect();
    terms.sort_by(|a, b| {
        let da: i64 = a.0.iter().sum();
        let db: i64 = b.0.iter().sum();
        db.cmp(&da).then_with(|| b.0.cmp(a.0))
    });
    let mut out = String::new();
    for (k, (e, c)) in terms.iter().enumerate() {
        let (neg, mag) = coeff_prefix(c, latex);
        let mono = {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    let v = names(i);
                    if x == 1 {
                        v
                    } else if latex {
                        format!("{}^{{{}}}", v, x)
                    } else {
                        format!("{}^{}", v, x)
                    }
                })
                .collect();
            if parts.is_empty() {
                None
            } else if latex {
                Some(parts.join(" "))
            } else {
                Some(parts.join("*"))
            }
        };
        let body = match (&mono, mag.is_empty()) {
            (None, true) => "1".to_string(),
            (None, false) => mag.clone(),
            (Some(m), true) => m.clone(),
            (Some(m), false) => {
                if latex {
                    format!("{} {}", mag, m)
                } else {
                    format!("{}*{}", mag, m)
                }
            }
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

/// Text for a normalized local zeta fraction.
pub fn termsum_text(nf: &NormalForm) -> String {
    render_normalform(nf, false)
}

pub fn termsum_latex(nf: &NormalForm) -> String {
    render_normalform(nf, true)
}

fn render_normalform(nf: &NormalForm, latex: bool) -> String {
    let nvars = nf.nvars;
    let names = move |i: usize| var_name(i, nvars);
    let num = poly_text(&nf.num, &names, latex);
    if nf.den.is_empty() {
        return num;
    }
    let mut den_parts = Vec::new();
    for (u, mult) in &nf.den {
        let factor = format!("1 - {}", monomial_text(u, nvars, latex));
        let body = if *mult == 1 {
            format!("({})", factor)
        } else if latex {
            format!("({})^{{{}}}", factor, mult)
        } else {
            format!("({})^{}", factor, mult)
        };
        den_parts.push(body);
    }
    let den = den_parts.join(if latex { " " } else { "*" });
    if latex {
        format!("\\frac{{{}}}{{{}}}", num, den)
    } else {
        format!("({})/({})", num, den)
    }
}

fn linform_text(f: &LinForm, m: usize, latex: bool) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (j, c) in f.cs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = s_name(j, m);
        let term = if c.abs().is_one() {
            name
        } else if latex {
            format!("{} {}", c.abs(), name)
        } else {
            format!("{}*{}", c.abs(), name)
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() {
                format!("-{}", term)
            } else {
                term
            });
        } else if c.is_negative() {
            parts.push(format!("- {}", term));
        } else {
            parts.push(format!("+ {}", term));
        }
    }
    if !f.c0.is_zero() {
        if parts.is_empty() {
            parts.push(f.c0.to_string());
        } else if f.c0.is_negative() {
            parts.push(format!("- {}", f.c0.clone().abs()));
        } else {
            parts.push(format!("+ {}", f.c0));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Text for a normalized topological zeta fraction, e.g.
/// `(3*s - 1)/(2*(2*s - 1)*(s - 1)^2*s)`.
pub fn top_text(nf: &TopNormal) -> String {
    render_topnormal(nf, false)
}

pub fn top_latex(nf: &TopNormal) -> String {
    render_topnormal(nf, true)
}

fn render_topnormal(nf: &TopNormal, latex: bool) -> String {
    if nf.scalar.is_zero() {
        return "0".into();
    }
    let m = nf.m;
    let names = move |j: usize| s_name(j, m);
    // scalar = p/r: numerator scaled by p, denominator prefixed by r
    let p = nf.scalar.numer();
    let r = nf.scalar.denom();
    let num_poly = nf.num.scale(&Rat::from_integer(p.clone()));
    let num = poly_text(&num_poly, &names, latex);
    if nf.den.is_empty() && r.is_one() {
        return num;
    }
    let mut den_parts: Vec<String> = Vec::new();
    if !r.is_one() {
        den_parts.push(r.to_string());
    }
    for (f, mult) in &nf.den {
        let inner = linform_text(f, m, latex);
        let simple_var = f.c0.is_zero()
            && f.cs.iter().filter(|c| !c.is_zero()).count() == 1
            && f.cs.iter().all(|c| c.is_zero() || c.is_one());
        let body = if *mult == 1 {
            if simple_var {
                inner
            } else {
                format!("({})", inner)
            }
        } else if latex {
            format!("({})^{{{}}}", inner, mult)
        } else {
            format!("({})^{}", inner, mult)
        };
        den_parts.push(body);
    }
    let den = den_parts.join(if latex { " " } else { "*" });
    let num_wrapped = if num_poly.num_terms() > 1 {
        format!("({})", num)
    } else {
        num
    };
    if latex {
        format!("\\frac{{{}}}{{{}}}", num_wrapped, den)
    } else {
        format!("{}/({})", num_wrapped, den)
    }
}

/// Display helper for big rationals in reports.
pub fn rat_text(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int_text(i: &Int) -> String {
    i.to_string()
}
