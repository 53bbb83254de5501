use criterion::{black_box, criterion_group, criterion_main, Criterion};

use mfp_core::graph::{shortest_path, CostModel};
use mfp_core::mission::{clairvoyant_optimum_with, run_trajectory, Algorithm, MissionSpec};
use mfp_core::scenarios::{generate_er, generate_wind_trace, ErConfig};
use mfp_core::{ClassCount, DroneParams, Leg};

fn spec(destination: u32) -> MissionSpec {
    MissionSpec {
        destination,
        budget_j: 5_000_000.0,
        payload_kg: 7.0,
        ground_speed: 20.0,
        class_count: ClassCount::Four,
        start_slot: 0,
    }
}

fn bench_dijkstra(c: &mut Criterion) {
    let graph = generate_er(&ErConfig::new(100, 2.0, 4000.0, 7)).unwrap();
    let trace = generate_wind_trace(
        3,
        64,
        60.0,
        &[0.0, 5.0, 10.0, 15.0],
        &["global".to_string()],
    )
    .unwrap();
    let params = DroneParams::default();
    let mut model = CostModel::new(&graph, &trace, &params, 7.0, 20.0, ClassCount::Four).unwrap();
    let snap = model.snapshot(0).unwrap();
    let costs = snap.costs(Leg::Loaded).to_vec();
    c.bench_function("dijkstra_er100", |b| {
        b.iter(|| shortest_path(&graph, black_box(&costs), 0, 99, None))
    });
}

fn bench_dsp_mission(c: &mut Criterion) {
    let graph = generate_er(&ErConfig::new(26, 2.0, 2000.0, 11)).unwrap();
    let trace = generate_wind_trace(
        5,
        128,
        60.0,
        &[0.0, 5.0, 10.0, 15.0],
        &["global".to_string()],
    )
    .unwrap();
    let params = DroneParams::default();
    c.bench_function("dsp_mission_er26", |b| {
        b.iter(|| {
            let mut model =
                CostModel::new(&graph, &trace, &params, 7.0, 20.0, ClassCount::Four).unwrap();
            run_trajectory(&mut model, &spec(13), Algorithm::Dsp).unwrap()
        })
    });
}

fn bench_oracle(c: &mut Criterion) {
    let graph = generate_er(&ErConfig::new(8, 2.0, 1500.0, 13)).unwrap();
    let trace = generate_wind_trace(
        9,
        16,
        60.0,
        &[0.0, 5.0, 10.0, 15.0],
        &["global".to_string()],
    )
    .unwrap();
    let params = DroneParams::default();
    c.bench_function("clairvoyant_er8", |b| {
        b.iter(|| {
            let mut model =
                CostModel::new(&graph, &trace, &params, 7.0, 20.0, ClassCount::Four).unwrap();
            clairvoyant_optimum_with(&mut model, &spec(5), Some(10)).unwrap()
        })
    });
}

criterion_group!(benches, bench_dijkstra, bench_dsp_mission, bench_oracle);
criterion_main!(benches);
