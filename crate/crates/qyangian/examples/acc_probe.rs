//! Timing probe for the acceptance-scale suite runs.  Scaffolding only.

use std::path::Path;
use std::time::Instant;

use qyangian::drinfeld::{coeff_relation_checks, rank1_checks, rank2_checks};
use qyangian::gauss::{check_fde, check_ldu_reconstruction, check_quasidet_oracle, Ctx};

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    let cache = Path::new("target/qy-cache");
    match which.as_str() {
        "rank1" => {
            let t = Instant::now();
            let checks = rank1_checks(8, Some(cache)).unwrap();
            for (name, ok) in &checks {
                eprintln!("  {} {}", if *ok { "ok " } else { "FAIL" }, name);
            }
            eprintln!("rank1(8): {:.2?}", t.elapsed());
        }
        "rank2" => {
            let t = Instant::now();
            let checks = rank2_checks(6, Some(cache)).unwrap();
            for (name, ok) in &checks {
                eprintln!("  {} {}", if *ok { "ok " } else { "FAIL" }, name);
            }
            eprintln!("rank2(6): {:.2?}", t.elapsed());
        }
        "coeff2" => {
            let t = Instant::now();
            let checks = coeff_relation_checks(2, 2, 2, 8, Some(cache)).unwrap();
            for (name, ok) in &checks {
                eprintln!("  {} {}", if *ok { "ok " } else { "FAIL" }, name);
            }
            eprintln!("coeff(2,2,2,8): {:.2?}", t.elapsed());
        }
        "coeff3" => {
            let t = Instant::now();
            let checks = coeff_relation_checks(3, 2, 2, 8, Some(cache)).unwrap();
            for (name, ok) in &checks {
                eprintln!("  {} {}", if *ok { "ok " } else { "FAIL" }, name);
            }
            eprintln!("coeff(3,2,2,8): {:.2?}", t.elapsed());
        }
        "gauss2" => {
            let t = Instant::now();
            let ok = check_ldu_reconstruction(2, 8, &Ctx::Free).unwrap();
            eprintln!("ldu full n=2 w=8: {} in {:.2?}", ok, t.elapsed());
            let t = Instant::now();
            let ok = check_quasidet_oracle(2, 8, &Ctx::Free).unwrap();
            eprintln!("quasidet n=2 w=8: {} in {:.2?}", ok, t.elapsed());
        }
        "gauss3" => {
            let t = Instant::now();
            let ok = check_fde(3, 8, &Ctx::Free).unwrap();
            eprintln!("fde n=3 w=8: {} in {:.2?}", ok, t.elapsed());
            let t = Instant::now();
            let ok = check_quasidet_oracle(3, 8, &Ctx::Free).unwrap();
            eprintln!("quasidet n=3 w=8: {} in {:.2?}", ok, t.elapsed());
        }
        "classical" => {
            let t = Instant::now();
            let checks = qyangian::classical::check_images(3, 3, Some(cache)).unwrap();
            for (name, ok) in &checks {
                eprintln!("  {} {}", if *ok { "ok " } else { "FAIL" }, name);
            }
            eprintln!("images(3,3): {:.2?}", t.elapsed());
            let t = Instant::now();
            let ok = qyangian::classical::pbw_rank_check(3, 2, 2, Some(cache)).unwrap();
            eprintln!("pbw rank(3,2,2): {} in {:.2?}", ok, t.elapsed());
        }
        other => {
            eprintln!("unknown probe: {other}");
            std::process::exit(2);
        }
    }
    if let Ok(st) = std::fs::read_to_string("/proc/self/status") {
        for line in st.lines() {
            if line.starts_with("VmHWM") {
                eprintln!("{line}");
            }
        }
    }
}
