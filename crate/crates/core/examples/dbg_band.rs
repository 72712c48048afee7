use taut::curve::*;
use taut::surface::SurfaceSpec;

fn main() {
    let s = SurfaceSpec::new(2).unwrap();
    let m1 = CurveClass::generator(s, 0);
    let m2 = CurveClass::generator(s, 2);
    let guide = curve_from_passages(s, &[2, 4]).unwrap();
    println!("i(m1,guide) = {:?}", geometric_intersection(&m1, &guide));
    println!("i(m2,guide) = {:?}", geometric_intersection(&m2, &guide));
    let sums = band_sum_candidates(&m1, &m2, &guide).unwrap();
    println!("candidates: {}", sums.len());
    for s in &sums {
        println!("  essential={} word={:?}", s.is_essential(), s.word());
    }
}
