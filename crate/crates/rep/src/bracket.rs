use ncw_core::{Quiver, Scalar, Stratum};

use crate::error::RepError;
use crate::poly::{SuperPolyOver, Var};

/// The coordinate paired with `v`: `(X_e)_{ij}` with `(X_{e*})_{ji}` and back.
fn partner(q: &Quiver, v: Var) -> Option<Var> {
    let other = match q.stratum(v.arrow) {
        Stratum::Base => q.star_of(v.arrow)?,
        Stratum::Star => q.base_of(v.arrow),
        Stratum::Diff => return None,
    };
    Some(Var { arrow: other, i: v.j, j: v.i, odd: q.grade(other).is_odd() })
}

/// Canonical bracket on `k[T*Rep]` with `{X_ij, X*_kl} = δ_il δ_jk`.
/// Only defined on even coordinates.
pub fn matrix_poisson<S: Scalar>(q: &Quiver, f: &SuperPolyOver<S>, g: &SuperPolyOver<S>) -> Result<SuperPolyOver<S>, RepError> {
    for p in [f, g] {
        if let Some(v) = p.variables().into_iter().find(|v| v.odd) {
            return Err(RepError::OddVariable(v.render(q)));
        }
    }
    let mut vars = f.variables();
    vars.extend(g.variables());
    vars.sort();
    vars.dedup();
    let mut out = SuperPolyOver::zero();
    for v in vars.into_iter().filter(|v| q.stratum(v.arrow) == Stratum::Base) {
        let Some(w) = partner(q, v) else { continue };
        let plus = &f.derivative(v) * &g.derivative(w);
        let minus = &f.derivative(w) * &g.derivative(v);
        out = &(&out + &plus) - &minus;
    }
    Ok(out)
}

/// `Δ = Σ ∂²/∂X_ij ∂ξ_ji`, summed over base arrows with odd partners.
pub fn odd_laplacian<S: Scalar>(q: &Quiver, f: &SuperPolyOver<S>) -> SuperPolyOver<S> {
    let mut out = SuperPolyOver::zero();
    for v in f.variables().into_iter().filter(|v| !v.odd && q.stratum(v.arrow) == Stratum::Base) {
        let Some(w) = partner(q, v) else { continue };
        if w.odd {
            out = &out + &f.derivative(w).derivative(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncw_core::Q;

    #[test]
    fn canonical_pair() {
        let q = Quiver::loops(&["x"], 0);
        let x = SuperPolyOver::<Q>::var(Var { arrow: 0, i: 0, j: 1, odd: false });
        let p = SuperPolyOver::var(Var { arrow: 1, i: 1, j: 0, odd: false });
        assert_eq!(matrix_poisson(&q, &x, &p).unwrap(), SuperPolyOver::one());
        assert_eq!(matrix_poisson(&q, &p, &x).unwrap(), -&SuperPolyOver::one());
        let off = SuperPolyOver::var(Var { arrow: 1, i: 0, j: 1, odd: false });
        assert!(matrix_poisson(&q, &x, &off).unwrap().is_zero());
        let xp = &x * &p;
        assert!(matrix_poisson(&q, &xp, &xp).unwrap().is_zero());
    }

    #[test]
    fn laplacian_ignores_even_polynomials() {
        let q = Quiver::loops(&["x"], 1);
        let x = SuperPolyOver::<Q>::var(Var { arrow: 0, i: 0, j: 0, odd: false });
        assert!(odd_laplacian(&q, &(&x * &x)).is_zero());
        let xi = SuperPolyOver::var(Var { arrow: 1, i: 0, j: 0, odd: true });
        assert_eq!(odd_laplacian(&q, &(&(&x * &x) * &xi)), x.scale(&<Q as ncw_core::Scalar>::from_int(2)));
    }
}
