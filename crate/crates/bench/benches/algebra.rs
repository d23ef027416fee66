use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use trivolve_core::algebra::{cyclic_group_table, group_algebra, matrix_algebra};
use trivolve_core::duality::{arens_products, whole_dual};
use trivolve_core::instances::{c2_projection_instance, named_instances, random_vector};
use trivolve_core::search::{search_trivolutions, FamilySpec};
use trivolve_core::spectra::verify_spectral_inclusion;
use trivolve_core::trivolution::{canonical_decomposition, classify_star_map};
use trivolve_core::unitization::find_type1_solutions;

fn associativity(c: &mut Criterion) {
    let mut g = c.benchmark_group("associativity");
    for n in [2usize, 3, 4] {
        let a = matrix_algebra(n);
        g.bench_with_input(BenchmarkId::new("M_n", n * n), &a, |b, a| {
            b.iter(|| a.associativity_residual())
        });
    }
    for n in [4usize, 8, 12] {
        let a = group_algebra(&cyclic_group_table(n), None).unwrap();
        g.bench_with_input(BenchmarkId::new("C[Z_n]", n), &a, |b, a| {
            b.iter(|| a.associativity_residual())
        });
    }
    g.finish();
}

fn trivolutions(c: &mut Criterion) {
    let instances = named_instances();
    c.bench_function("classify named instances", |b| {
        b.iter(|| {
            for inst in &instances {
                black_box(classify_star_map(&inst.algebra, &inst.tau).unwrap());
            }
        })
    });
    c.bench_function("decompose named instances", |b| {
        b.iter(|| {
            for inst in &instances {
                black_box(canonical_decomposition(&inst.algebra, &inst.tau).unwrap());
            }
        })
    });
}

fn spectra(c: &mut Criterion) {
    let instances = named_instances();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let elements: Vec<_> = instances
        .iter()
        .map(|i| i.algebra.element_from(random_vector(&mut rng, i.dim(), 1.0)))
        .collect();
    c.bench_function("spectral inclusion, named instances", |b| {
        b.iter(|| {
            for (inst, x) in instances.iter().zip(&elements) {
                let _ = black_box(verify_spectral_inclusion(&inst.algebra, &inst.tau, x));
            }
        })
    });
}

fn unitization_and_search(c: &mut Criterion) {
    let inst = c2_projection_instance();
    c.bench_function("type-I solutions, ℂ² half conjugation", |b| {
        b.iter(|| find_type1_solutions(&inst.algebra, &inst.tau, 0).unwrap())
    });
    let c4 = trivolve_core::algebra::function_algebra(4);
    c.bench_function("indicator search on C^4", |b| {
        b.iter(|| search_trivolutions(&c4, &FamilySpec::Indicator { permutations: true }).unwrap())
    });
}

fn arens(c: &mut Criterion) {
    let mut g = c.benchmark_group("arens products on A*");
    for n in [4usize, 6, 8] {
        let a = group_algebra(&cyclic_group_table(n), None).unwrap();
        let x = whole_dual(&a).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &(a, x), |b, (a, x)| {
            b.iter(|| arens_products(a, x).unwrap())
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    associativity,
    trivolutions,
    spectra,
    unitization_and_search,
    arens
);
criterion_main!(benches);
