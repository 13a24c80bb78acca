use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use threadpulse_bench::SENTENCES;
use threadpulse_core::sentiment::{analyze_polarity, analyze_valence, Lexicon};
use threadpulse_core::SentimentEngine;

fn bench(c: &mut Criterion) {
    let valence = Lexicon::builtin_valence();
    let polarity = Lexicon::builtin_polarity();
    let engine = SentimentEngine::builtin();
    let mut g = c.benchmark_group("sentiment");
    g.throughput(Throughput::Elements(SENTENCES.len() as u64));
    g.bench_function("analyze_valence", |b| {
        b.iter(|| {
            for s in SENTENCES {
                black_box(analyze_valence(black_box(s), &valence));
            }
        })
    });
    g.bench_function("analyze_polarity", |b| {
        b.iter(|| {
            for s in SENTENCES {
                black_box(analyze_polarity(black_box(s), &polarity));
            }
        })
    });
    g.bench_function("combined_score", |b| {
        b.iter(|| {
            for s in SENTENCES {
                black_box(engine.score(black_box(s)));
            }
        })
    });
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
