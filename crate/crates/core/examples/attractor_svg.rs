//! Samples the attractor of a fractal fit and writes an SVG plot.
//!
//! Usage: `cargo run --example attractor_svg [out.svg]`

use rational_fif::cli::svg::{render, Plot};
use rational_fif::{build_fif, sample_attractor, FifParameters, HermiteData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("attractor.svg"), Into::into);
    let data = HermiteData::from_triples(&[
        (0.0, 0.0, 1.3333),
        (2.0, 4.0, 2.6666),
        (3.0, 7.0, 2.6190),
        (9.0, 9.0, 1.5833),
        (11.0, 13.0, 2.4166),
    ])?;
    let params = FifParameters::new(vec![0.18, 0.09, 0.1, 0.18], vec![2.0, 1.8, 31.0, 0.5]);
    let fif = build_fif(data, params)?;
    let sample = sample_attractor(&fif, 5)?;
    let slopes = sample.s1.as_deref().unwrap_or_default();
    println!("{} attractor points, S' within [{:.4}, {:.4}]",
        sample.len(),
        slopes.iter().copied().fold(f64::INFINITY, f64::min),
        slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max));

    let svg = render(&Plot {
        x: &sample.x,
        y: slopes,
        knots: Some((fif.data().x(), fif.data().d())),
        width: 900,
        height: 500,
        title: Some("derivative of a monotone fractal fit".into()),
    });
    std::fs::write(&out, svg)?;
    println!("wrote {}", out.display());
    Ok(())
}
