use cacti::{
  chain::{betti_numbers, boundary_tree},
  correlator::act,
  enumerate_cells,
  operad::compose,
  Cohomology, DecoratedTree,
};
use cacti_bench::{algebra, cochains};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn chains(c: &mut Criterion) {
  c.bench_function("enumerate K'(3)", |b| b.iter(|| enumerate_cells(black_box(3), 6)));
  let cells = enumerate_cells(3, 6);
  c.bench_function("boundary of all K'(3) cells", |b| b.iter(|| cells.iter().map(boundary_tree).count()));
  c.bench_function("Betti numbers of K'(3)", |b| b.iter(|| betti_numbers(black_box(3), false)));
}

fn operad(c: &mut Criterion) {
  let t = DecoratedTree::brace_cell(2, 1);
  let tp = DecoratedTree::brace_cell(1, 0);
  c.bench_function("compose brace cells", |b| b.iter(|| compose(black_box(&t), 1, black_box(&tp)).unwrap()));
}

fn action(c: &mut Criterion) {
  let a = algebra("z3");
  let fs = cochains(&a, &[2, 1, 1], 1);
  let t = DecoratedTree::brace_cell(2, 1);
  c.bench_function("act brace cell on z3", |b| b.iter(|| act(black_box(&t), &fs).unwrap()));
  let f = cochains(&a, &[3], 2);
  c.bench_function("Connes delta arity 3 on z3", |b| b.iter(|| f[0].cdelta().unwrap()));
  let dual = algebra("dual");
  c.bench_function("HH^3 of dual numbers", |b| b.iter(|| Cohomology::compute(&dual, 3)));
}

criterion_group!(benches, chains, operad, action);
criterion_main!(benches);
