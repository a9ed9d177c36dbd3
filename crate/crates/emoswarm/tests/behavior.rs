//! Cross-module behavior checks: paired runs, orderings between presets, and
//! log-level properties that no single module can see on its own.

use emoswarm::*;
use std::collections::HashMap;

fn metrics_for(spec: &BehaviorSpec, n: usize, seed: u64, duration: f64) -> SwarmMetrics {
    let log = run(spec, n, seed, duration, 0.01).unwrap();
    swarm_metrics(&log).unwrap()
}

#[test]
fn every_step_reads_only_the_pre_step_state() {
    let domain = Domain::unit();
    for emotion in [Emotion::Anger, Emotion::Happiness] {
        let spec = BehaviorSpec::preset(emotion, domain);
        let mut state = init_behavior(&spec, 8, 5).unwrap();
        let dt = 0.01;
        // Walk a few steps so the state is not a fresh placement.
        for _ in 0..3 {
            step(&spec, &mut state, dt).unwrap();
        }

        // Double-buffered reference: every robot's command and pose update
        // are derived from this frozen snapshot alone.
        let snapshot = state.clone();
        let field = spec.density_field().unwrap();
        let expected: Vec<Pose> = snapshot
            .poses
            .iter()
            .enumerate()
            .map(|(i, pose)| {
                let u = if let Some(contour) = &spec.contour {
                    let theta = wrap_phase(snapshot.t, snapshot.phases[i], contour.phase_rate);
                    goto_goal_si(pose.position, contour.point_at(theta, snapshot.t))
                } else {
                    let centroids = swarm_centroids(
                        &snapshot.positions(),
                        field.as_ref().unwrap(),
                        &spec.domain,
                        spec.resolution,
                    )
                    .unwrap();
                    (centroids[i] - pose.position) * spec.kappa
                };
                let cmd = saturate(
                    si_to_uni(u, pose.heading, &spec.diffeo),
                    spec.v_max,
                    spec.omega_max,
                );
                let next = step_unicycle(*pose, cmd, dt).unwrap();
                clamp_to_domain(next, &spec.domain, spec.robot_radius)
            })
            .collect();

        step(&spec, &mut state, dt).unwrap();
        assert_eq!(state.poses, expected, "{emotion}");
    }
}

#[test]
fn a_run_logs_one_record_per_robot_per_frame() {
    let spec = BehaviorSpec::preset(Emotion::Happiness, Domain::unit());
    let log = run(&spec, 15, 1, 1.0, 0.01).unwrap();
    assert_eq!(log.meta.steps, 100);
    assert_eq!(log.records.len(), 101 * 15);
}

#[test]
fn a_vanishing_horizon_leaves_the_swarm_untouched() {
    let spec = BehaviorSpec::preset(Emotion::Sadness, Domain::unit());
    let init = init_behavior(&spec, 3, 9).unwrap();
    let log = run(&spec, 3, 9, 1e-12, 0.01).unwrap();
    assert_eq!(log.meta.steps, 0);
    assert_eq!(log.records.len(), 3);
    for (record, pose) in log.records.iter().zip(&init.poses) {
        assert_eq!(record.t, 0.0);
        assert_eq!(Vec2::new(record.x, record.y), pose.position);
        assert_eq!(record.theta, pose.heading);
    }
}

#[test]
fn mean_speeds_order_across_the_presets() {
    let domain = Domain::unit();
    let mut mean = HashMap::new();
    for emotion in Emotion::ALL {
        let spec = BehaviorSpec::preset(emotion, domain);
        mean.insert(
            emotion,
            metrics_for(&spec, 15, 42, spec.default_duration).aggregate_mean_speed,
        );
    }
    assert!(mean[&Emotion::Anger] > mean[&Emotion::Fear], "{mean:?}");
    assert!(mean[&Emotion::Fear] >= mean[&Emotion::Disgust], "{mean:?}");
    assert!(
        mean[&Emotion::Happiness] > mean[&Emotion::Sadness],
        "{mean:?}"
    );
}

#[test]
fn coverage_traces_are_more_angular_at_a_matched_horizon() {
    let domain = Domain::unit();
    let mut angularity = HashMap::new();
    for emotion in Emotion::ALL {
        let spec = BehaviorSpec::preset(emotion, domain);
        angularity.insert(
            emotion,
            metrics_for(&spec, 15, 42, 6.0).aggregate_angularity,
        );
    }
    for coverage in [Emotion::Fear, Emotion::Disgust, Emotion::Anger] {
        for contour in [Emotion::Happiness, Emotion::Surprise, Emotion::Sadness] {
            assert!(
                angularity[&coverage] > angularity[&contour],
                "{coverage} {:.4} vs {contour} {:.4}",
                angularity[&coverage],
                angularity[&contour]
            );
        }
    }
}

#[test]
fn happiness_covers_more_ground_than_sadness_for_every_robot() {
    let domain = Domain::unit();
    let happy = run(
        &BehaviorSpec::preset(Emotion::Happiness, domain),
        15,
        42,
        4.0,
        0.01,
    )
    .unwrap();
    let sad = run(
        &BehaviorSpec::preset(Emotion::Sadness, domain),
        15,
        42,
        8.0,
        0.01,
    )
    .unwrap();
    for robot_id in 0..15 {
        let h = trace_stats(&happy, robot_id).unwrap().path_length;
        let s = trace_stats(&sad, robot_id).unwrap().path_length;
        assert!(
            h > s,
            "robot {robot_id}: happiness {h:.3} vs sadness {s:.3}"
        );
    }
}

#[test]
fn loosening_the_limits_lets_the_swarm_move_faster() {
    let domain = Domain::unit();
    let mut tight = BehaviorSpec::preset(Emotion::Anger, domain);
    tight.v_max = 0.3;
    let mut loose = BehaviorSpec::preset(Emotion::Anger, domain);
    loose.v_max = 10.0;

    let tight_log = run(&tight, 10, 11, 6.0, 0.01).unwrap();
    let loose_log = run(&loose, 10, 11, 6.0, 0.01).unwrap();
    assert_ne!(tight_log.records, loose_log.records);

    let tight_peak = swarm_metrics(&tight_log).unwrap().peak_speed;
    let loose_peak = swarm_metrics(&loose_log).unwrap().peak_speed;
    assert!(tight_peak <= 0.3 + 1e-12, "clamp leaked: {tight_peak}");
    assert!(loose_peak > tight_peak, "{loose_peak} vs {tight_peak}");
}

#[test]
fn smaller_look_ahead_makes_the_same_tracking_run_jerkier() {
    let domain = Domain::unit();
    let mut jerky = BehaviorSpec::preset(Emotion::Happiness, domain);
    jerky.diffeo.look_ahead = 0.001;
    let smooth = BehaviorSpec::preset(Emotion::Happiness, domain);

    // Same seed and contour, so both swarms chase identical target paths.
    let jerky_ang = metrics_for(&jerky, 5, 42, 4.0).aggregate_angularity;
    let smooth_ang = metrics_for(&smooth, 5, 42, 4.0).aggregate_angularity;
    assert!(
        jerky_ang > 5.0 * smooth_ang,
        "look-ahead 0.001 gave {jerky_ang:.3}, preset gave {smooth_ang:.3}"
    );
}

#[test]
fn boundary_density_pulls_robots_closer_to_the_walls() {
    let domain = Domain::unit();
    let mean_wall_distance = |emotion: Emotion| {
        let spec = BehaviorSpec::preset(emotion, domain);
        let log = run(&spec, 12, 5, spec.default_duration, 0.01).unwrap();
        let frames: Vec<_> = log.frames().collect();
        let last = frames.last().unwrap();
        last.iter()
            .map(|r| domain.wall_distance(Vec2::new(r.x, r.y)))
            .sum::<f64>()
            / last.len() as f64
    };
    let disgust = mean_wall_distance(Emotion::Disgust);
    let fear = mean_wall_distance(Emotion::Fear);
    assert!(disgust < fear, "disgust {disgust:.4} vs fear {fear:.4}");
}

#[test]
fn anger_concentrates_the_swarm_around_the_center() {
    let domain = Domain::unit();
    let spec = BehaviorSpec::preset(Emotion::Anger, domain);
    let log = run(&spec, 15, 3, 6.0, 0.01).unwrap();
    let center = domain.center();
    let frames: Vec<_> = log.frames().collect();
    let mean_center_distance = |frame: &[Record]| {
        frame
            .iter()
            .map(|r| center.dist(Vec2::new(r.x, r.y)))
            .sum::<f64>()
            / frame.len() as f64
    };
    let before = mean_center_distance(frames[0]);
    let after = mean_center_distance(frames.last().unwrap());
    assert!(after < before, "{after:.4} vs {before:.4}");
}

#[test]
fn disgust_never_escapes_the_domain() {
    let domain = Domain::unit();
    let spec = BehaviorSpec::preset(Emotion::Disgust, domain);
    let log = run(&spec, 15, 42, spec.default_duration, 0.01).unwrap();
    for r in &log.records {
        assert!(
            domain.wall_distance(Vec2::new(r.x, r.y)) >= 0.0,
            "robot {} left the domain at t={}: ({}, {})",
            r.robot_id,
            r.t,
            r.x,
            r.y
        );
    }
}

#[test]
fn a_lone_slow_tracker_hugs_its_circle_all_run() {
    let domain = Domain::unit();
    let spec = BehaviorSpec::preset(Emotion::Sadness, domain);
    let contour = spec.contour.unwrap();
    let log = run(&spec, 1, 8, 8.0, 0.01).unwrap();
    let tube = 0.05 * contour.radius;
    for r in &log.records {
        let radial = (contour.center.dist(Vec2::new(r.x, r.y)) - contour.radius).abs();
        assert!(radial <= tube, "radial gap {radial:.5} at t={}", r.t);
    }
}

#[test]
fn coverage_descent_is_monotone_across_seeds_at_the_step_bound() {
    let domain = Domain::unit();
    let field = DensityField::uniform(domain);
    let spec = BehaviorSpec::preset(Emotion::Fear, domain);
    let (kappa, resolution) = (1.0, 64);
    let dt = 0.05 / kappa;
    for seed in [1, 2, 3] {
        let mut positions = init_behavior(&spec, 8, seed).unwrap().positions();
        let mut cost = locational_cost(&positions, &field, &domain, resolution).unwrap();
        for step in 0..200 {
            let commands = coverage_si_all(&positions, &field, &domain, kappa, resolution).unwrap();
            for (p, u) in positions.iter_mut().zip(&commands) {
                *p += *u * dt;
            }
            let next = locational_cost(&positions, &field, &domain, resolution).unwrap();
            assert!(
                next <= cost,
                "seed {seed} step {step}: cost rose {cost:.9} -> {next:.9}"
            );
            cost = next;
        }
    }
}

#[test]
fn the_final_happiness_frame_draws_robots_inside_the_annulus() {
    let domain = Domain::unit();
    let spec = BehaviorSpec::preset(Emotion::Happiness, domain);
    let contour = spec.contour.unwrap();
    let log = run(&spec, 15, 42, 4.0, 0.01).unwrap();
    let last = log.frames().count() - 1;
    let svg = frame_svg(&log, last, &RenderOptions::default()).unwrap();

    let attr = |chunk: &str, name: &str| -> f64 {
        let tail = &chunk[chunk.find(&format!("{name}=\"")).unwrap() + name.len() + 2..];
        tail[..tail.find('"').unwrap()].parse().unwrap()
    };
    let tube = 0.05 * contour.radius;
    let (lo, hi) = (
        contour.radius - contour.amplitude - tube,
        contour.radius + contour.amplitude + tube,
    );
    let mut robots = 0;
    for chunk in svg.split("<g class=\"robot\"").skip(1) {
        let p = Vec2::new(attr(chunk, "data-x"), attr(chunk, "data-y"));
        let radial = contour.center.dist(p);
        assert!(
            (lo..=hi).contains(&radial),
            "robot at radial distance {radial:.4}, annulus [{lo:.4}, {hi:.4}]"
        );
        robots += 1;
    }
    assert_eq!(robots, 15);
}
