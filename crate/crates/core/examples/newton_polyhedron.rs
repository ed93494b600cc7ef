//! Vertices and facets of a Newton polyhedron, integral closure and
//! membership of rational points in scaled copies.

use jumpseries::newton::{integral_closure, is_reduction};
use jumpseries::rational::frac;
use jumpseries::{parse_ideal, NewtonPolyhedron};

fn main() -> jumpseries::Result<()> {
    let a = parse_ideal("x^4, x*y^2, y^3")?;
    let p = NewtonPolyhedron::new(&a)?;
    println!("vertices: {:?}", p.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    for f in p.facets() {
        println!("facet {:?}·u ≥ {}{}", f.normal, f.offset, if f.bounded { "" } else { "  (coordinate)" });
    }
    println!("integral closure: {}", integral_closure(&a)?);
    let q = parse_ideal("x^4, y^3")?;
    println!("(x^4, y^3) is a reduction: {}", is_reduction(&q, &a)?);
    let u = [frac(2, 1), frac(3, 2)];
    println!("(2, 3/2) in P: {}", p.in_scaled_polyhedron(&u, &frac(1, 1), false)?);
    println!("(2, 3/2) in interior of 2P: {}", p.in_scaled_polyhedron(&u, &frac(2, 1), true)?);
    let cands = p.candidate_jumps(&frac(2, 1))?;
    println!("candidate jumps up to 2: {}", cands.iter().map(jumpseries::rational::format_rational).collect::<Vec<_>>().join(" "));
    Ok(())
}
