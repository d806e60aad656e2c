use crate::groebner::Ideal;
use crate::poly::PolyRing;

pub fn twisted_cubic() -> Ideal {
    let r = PolyRing::with_vars(&["x", "y", "z", "w"]).unwrap();
    let (a, b, c, d) = (r.var(0), r.var(1), r.var(2), r.var(3));
    Ideal::new(
        &r,
        vec![
            &(&a * &c) - &b.pow(2),
            &(&a * &d) - &(&b * &c),
            &(&b * &d) - &c.pow(2),
        ],
    )
    .unwrap()
}
