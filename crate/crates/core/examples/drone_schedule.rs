//! Earliest start times for one cycle of a flight-control loop.

use tropical::TaskGraph;

fn main() -> tropical::Result<()> {
    let mut g = TaskGraph::new(false);
    let imu = g.add_task("IMU", 50, 0)?;
    let gps = g.add_task("GPS", 100, 0)?;
    let fusion = g.add_task("Fusion", 200, 0)?;
    let att = g.add_task("AttCtrl", 140, 0)?;
    let pos = g.add_task("PosEst", 150, 0)?;
    let pwm = g.add_task("PWM", 80, 0)?;
    let telemetry = g.add_task("Telemetry", 120, 0)?;
    for (from, to) in [(imu, fusion), (gps, fusion), (fusion, att), (fusion, pos), (att, pwm), (pos, telemetry)] {
        g.add_constraint(from, to, None)?;
    }

    let r = g.solve(0)?;
    for (i, name) in g.names().iter().enumerate() {
        println!("{name:<10} start {:>4}  done {:>4}", r.start[i], r.completion[i]);
    }
    let path: Vec<&str> = g.critical_path(&r).iter().map(|&i| g.names()[i].as_str()).collect();
    println!("makespan {} after {} passes", r.makespan, r.iterations);
    println!("critical path: {}", path.join(" → "));
    Ok(())
}
