use std::fmt::Write as _;

use anyhow::{Context, Result};
use qwalk_core::{
    distribution, evolve, game_time_series, phase_sweep, state_sweep, DensityContext,
    LimitMeasureContext, PhaseCell, WalkState,
};

use crate::args::{
    parse_axis, parse_protocol, parse_state, ConfigError, DensityArgs, GameArgs, LimitArgs,
    PhaseArgs, SimulateArgs, StateSweepArgs,
};
use crate::format::fmt17;

/// Radius of the `limit_probability` column added by `simulate --with-limit`.
pub const WITH_LIMIT_RADIUS: i64 = 200;

pub fn simulate(args: &SimulateArgs) -> Result<String> {
    let coins = args.coins.coins()?;
    let init = parse_state(&args.q)?;
    let protocol = parse_protocol(&args.protocol)?;
    let limit = if args.with_limit {
        Some(LimitMeasureContext::with_memo_radius(
            coins,
            WITH_LIMIT_RADIUS as usize,
        )?)
    } else {
        None
    };
    let state = evolve(&init, &coins, protocol, args.t);
    let dist = distribution(&state);
    let (lo, hi) = support_window(&state);
    let mut out = String::from(if limit.is_some() {
        "x,probability,limit_probability\n"
    } else {
        "x,probability\n"
    });
    for x in lo..=hi {
        write!(out, "{x},{}", fmt17(dist.prob(x)))?;
        if let Some(ctx) = &limit {
            out.push(',');
            if x.abs() <= WITH_LIMIT_RADIUS {
                out.push_str(&fmt17(ctx.limit_prob(x, &init)));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

fn support_window(state: &WalkState) -> (i64, i64) {
    state.support().unwrap_or((0, 0))
}

pub fn limit(args: &LimitArgs) -> Result<String> {
    if args.radius < 0 {
        return Err(
            ConfigError(format!("--radius must be nonnegative, got {}", args.radius)).into(),
        );
    }
    let init = parse_state(&args.q)?;
    let ctx = LimitMeasureContext::with_memo_radius(args.coins.coins()?, args.radius as usize)?;
    let mut out = String::from("x,limit_probability\n");
    for x in -args.radius..=args.radius {
        writeln!(out, "{x},{}", fmt17(ctx.limit_prob(x, &init)))?;
    }
    Ok(out)
}

pub struct DensityOutput {
    pub csv: Option<String>,
    pub moment: Option<f64>,
}

pub fn density(args: &DensityArgs) -> Result<DensityOutput> {
    if args.moment.is_none() && args.output.is_none() {
        return Err(ConfigError("density needs --output, --moment or both".into()).into());
    }
    if args.points == 0 {
        return Err(ConfigError("--points must be positive".into()).into());
    }
    let init = parse_state(&args.q)?;
    let ctx = DensityContext::new(&args.coins.coins()?, &init)?;
    let moment = args.moment.map(|r| ctx.moment(r)).transpose()?;
    let csv = args.output.as_ref().map(|_| {
        let edge = ctx.support_edge();
        let consts = format!(
            "{},{},{},{}",
            fmt17(ctx.delta),
            fmt17(ctx.d0),
            fmt17(ctx.d1),
            fmt17(ctx.d2)
        );
        let mut out = String::from("x,f_of_x,delta,d0,d1,d2\n");
        for i in 0..args.points {
            let x = -edge + 2.0 * edge * (i + 1) as f64 / (args.points + 1) as f64;
            out.push_str(&format!(
                "{},{},{consts}\n",
                fmt17(x),
                fmt17(ctx.density(x))
            ));
        }
        out
    });
    Ok(DensityOutput { csv, moment })
}

pub fn game(args: &GameArgs) -> Result<String> {
    let coins = args.coins.coins()?;
    let init = parse_state(&args.q)?;
    let protocol = parse_protocol(&args.protocol)?;
    if args.t_max == 0 {
        return Err(ConfigError("--t-max must be at least 1".into()).into());
    }
    let series = game_time_series(protocol, &coins, &init, args.t_max)?;
    let mut out = String::from("t,pr_minus_pl\n");
    for (t, m) in series {
        writeln!(out, "{t},{}", fmt17(m))?;
    }
    Ok(out)
}

fn check_n_eps(n: u64, eps: f64) -> Result<()> {
    if n == 0 {
        return Err(ConfigError("--n must be at least 1".into()).into());
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(ConfigError(format!("--eps must be positive, got {eps}")).into());
    }
    Ok(())
}

pub fn phase(args: &PhaseArgs) -> Result<String> {
    let t1 = parse_axis(&args.theta1_axis).context("--theta1-axis")?;
    let t2 = parse_axis(&args.theta2_axis).context("--theta2-axis")?;
    let init = parse_state(&args.q)?;
    check_n_eps(args.n, args.eps)?;
    let grid = phase_sweep(&t1, &t2, &init, args.n, args.eps)?;
    let mut out = String::from("theta1_over_pi,theta2_over_pi,margin,label\n");
    for (a, b, cell) in grid.iter() {
        match cell {
            PhaseCell::Valid(v) => writeln!(
                out,
                "{},{},{},{}",
                fmt17(a),
                fmt17(b),
                fmt17(v.margin),
                v.label
            )?,
            PhaseCell::Invalid => writeln!(out, "{},{},,Invalid", fmt17(a), fmt17(b))?,
        }
    }
    Ok(out)
}

pub fn state_sweep_csv(args: &StateSweepArgs) -> Result<String> {
    let phis = parse_axis(&args.phi_axis).context("--phi-axis")?;
    check_n_eps(args.n, args.eps)?;
    let points = state_sweep(&args.coins.coins()?, &phis, args.n, args.eps)?;
    let mut out = String::from("phi_over_pi,margin,label\n");
    for p in points {
        writeln!(
            out,
            "{},{},{}",
            fmt17(p.phi_over_pi),
            fmt17(p.verdict.margin),
            p.verdict.label
        )?;
    }
    Ok(out)
}
