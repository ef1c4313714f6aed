use criterion::{criterion_group, criterion_main, Criterion};
use polar_core::gecc::{build_gecc, DEFAULT_SEED};
use polar_core::polar::{main1_table, polar_curve};
use polar_core::{bundled, parse_poly, Ideal, MonomialOrder, VarContext};

fn groebner(c: &mut Criterion) {
    let ctx = VarContext::new(["x", "y", "t"]).unwrap();
    let gens: Vec<_> = ["x^3 + y^2*t - t^3", "x*y^2 - t^2", "y^3 + x*t"]
        .iter()
        .map(|s| parse_poly(s, &ctx).unwrap())
        .collect();
    for (name, ord) in [("grevlex", MonomialOrder::Grevlex), ("lex", MonomialOrder::Lex)] {
        c.bench_function(&format!("groebner_{name}"), |b| {
            b.iter(|| Ideal::new(&ctx, gens.clone()).unwrap().groebner_basis(ord).unwrap().len())
        });
    }

    let xy = VarContext::new(["x", "y"]).unwrap();
    let a = Ideal::new(&xy, vec![parse_poly("x^3", &xy).unwrap(), parse_poly("y^2", &xy).unwrap()]).unwrap();
    let b = Ideal::new(&xy, vec![parse_poly("(x-1)^2", &xy).unwrap(), parse_poly("y+x-1", &xy).unwrap()]).unwrap();
    c.bench_function("intersect_two_points", |bch| {
        bch.iter(|| {
            let a = Ideal::new(&xy, a.gens().to_vec()).unwrap();
            a.intersect(&b).unwrap().vspace_dim().unwrap()
        })
    });
}

fn pipelines(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipelines");
    g.sample_size(10);
    let ex26 = bundled::load("example2_6").unwrap();
    let ex35 = bundled::load("example3_5").unwrap();
    g.bench_function("gecc_example2_6", |b| b.iter(|| build_gecc(&ex26, DEFAULT_SEED).unwrap()));
    g.bench_function("polar_example3_5", |b| b.iter(|| polar_curve(&ex35, DEFAULT_SEED).unwrap()));
    g.bench_function("main1_example3_5", |b| b.iter(|| main1_table(&ex35, DEFAULT_SEED).unwrap()));
    g.finish();
}

criterion_group!(benches, groebner, pipelines);
criterion_main!(benches);
