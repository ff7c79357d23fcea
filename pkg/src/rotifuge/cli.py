"""Command-line interface.

Subcommands: levels, classify, path, pulse, propagate, observe, density,
axisdist, sweep.  Every command is deterministic given its configuration
and seed, writes its primary artifact plus a JSON metadata sidecar
(<out>.meta.json echoing the effective configuration), and refuses to
overwrite existing outputs unless --force is given.

Exit codes: 0 ok, 1 ok with warnings recorded in metadata, 2 configuration
error, 3 no excitation path, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__, centrifuge, coupling, dynamics, observables, rotor
from .coupling import PathNotFound, StateKey
from .dynamics import NumericError
from .rotor import ConfigError


def _check_out(path, force):
    if path and os.path.exists(path) and not force:
        raise ConfigError(f"output {path!r} exists; pass --force to overwrite")


def _sidecar(out_path, args, extra=None):
    meta = {
        "tool": "rotifuge",
        "version": __version__,
        "config": {k: v for k, v in sorted(vars(args).items()) if k != "func"},
    }
    if extra:
        meta.update(extra)
    with open(out_path + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def _load_molecule(args):
    return rotor.load_molecule(args.molecule)


def cmd_levels(args):
    spec = _load_molecule(args)
    _check_out(args.out, args.force)
    rows = rotor.multiplet_table(spec, args.jmax, args.embedding, args.threshold)
    rotor.write_levels_csv(rows, args.out)
    degenerate = sum(
        1
        for i in range(1, len(rows))
        if rows[i]["J"] == rows[i - 1]["J"]
        and abs(rows[i]["energy_cm1"] - rows[i - 1]["energy_cm1"]) < 1e-9
    )
    _sidecar(args.out, args, {"n_levels": len(rows), "degenerate_pairs": degenerate})
    print(f"wrote {len(rows)} levels to {args.out}")
    return 0


def cmd_classify(args):
    spec = _load_molecule(args)
    _check_out(args.out, args.force)
    rows = rotor.multiplet_table(spec, args.jmax, args.embedding, args.threshold)
    rotor.write_levels_csv(rows, args.out)
    counts = {}
    for r in rows:
        counts[r["label"]] = counts.get(r["label"], 0) + 1
    _sidecar(args.out, args, {"label_counts": counts})
    print(f"classified {len(rows)} states: {counts}")
    return 0


def _path_target_state(j, axis, spec, embedding):
    """Ladder target: the best even-parity axis-principal state, falling
    back to the whole-multiplet winner when the even-parity block carries
    no state of the requested axis character (that winner then sits in a
    symmetry block the ladder cannot reach and the search reports it dark).
    """
    if j == 0:
        return rotor.diagonalize_multiplet(0, spec, embedding)[0]
    cand = rotor.find_principal_state(j, axis, spec, tau=0, embedding=embedding)
    _, coords = rotor.classify_state(cand)
    if rotor.AXES[int(np.argmax(coords))] == axis:
        return cand
    return rotor.find_principal_state(j, axis, spec, tau=None, embedding=embedding)


def cmd_path(args):
    spec = _load_molecule(args)
    _check_out(args.out, args.force)
    jmax = args.jmax if args.jmax else args.target_j + 2
    target_state = _path_target_state(
        args.target_j, args.axis, spec, args.embedding
    )
    source = StateKey(0, 1, 0, 0)
    target = StateKey(args.target_j, target_state.h, target_state.tau, args.target_j)
    if source == target:
        path = coupling.PathSpec([source], [], [])
        path.embedding = args.embedding
    else:
        graph = coupling.build_transition_graph(
            spec, jmax, floor=args.floor, embedding=args.embedding
        )
        path = coupling.shortest_path(graph, source, target, spec, args.embedding)
    with open(args.out, "w") as fh:
        fh.write(path.to_json(spec, args.embedding))
        fh.write("\n")
    _sidecar(args.out, args, {"hops": len(path.omegas_cm1), "moments": path.moments})
    for rec in path.to_records(spec, args.embedding):
        omega = rec["omega_to_next_cm1"]
        arrow = f" --({omega:.2f} cm-1)->" if omega is not None else ""
        print(f"|J={rec['J']}, M={rec['M']}, h={rec['h']}, {rec['tau']}>{arrow}")
    return 0


def _pulse_params(args):
    return centrifuge.CentrifugeParams(
        E0=args.e0, beta=args.beta, sigma=args.sigma, t0=args.t0
    )


def _load_path(args, spec):
    with open(args.path) as fh:
        return coupling.PathSpec.from_json(fh.read(), spec)


def cmd_pulse(args):
    spec = _load_molecule(args)
    _check_out(args.out, args.force)
    path = _load_path(args, spec)
    params = _pulse_params(args)
    schedule = centrifuge.resonance_schedule(path, params)
    with open(args.out, "w") as fh:
        json.dump(centrifuge.pulse_descriptor(params, schedule), fh, indent=2)
        fh.write("\n")
    if args.envelope_csv:
        _check_out(args.envelope_csv, args.force)
        t_end = schedule.t_end + 4 * args.sigma
        ts = np.arange(args.t0, t_end, args.tstep)
        amps = centrifuge.envelope(ts, schedule, params)
        with open(args.envelope_csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t_ps", "amplitude_V_per_cm", "intensity_rel"])
            for t, a in zip(ts, amps):
                writer.writerow([f"{t:.4f}", f"{a:.6e}", f"{(a / args.e0) ** 2:.8f}"])
    _sidecar(args.out, args, {"resonance_times_ps": schedule.times})
    print(f"schedule with {len(schedule.entries)} resonances, last at {schedule.t_end:.2f} ps")
    return 0


def cmd_propagate(args):
    spec = _load_molecule(args)
    _check_out(args.out, args.force)
    if args.wavepacket_out:
        _check_out(args.wavepacket_out, args.force)
    path = _load_path(args, spec)
    params = _pulse_params(args)
    schedule = centrifuge.resonance_schedule(path, params)
    jmax = args.jmax if args.jmax else path.states[-1].J + 4
    basis = centrifuge.BasisIndex(spec, jmax, args.embedding)
    interaction = centrifuge.InteractionOperator(basis, schedule, params)

    wp0 = dynamics.Wavepacket.pure(basis.keys, basis.energies, StateKey(0, 1, 0, 0))
    t_end = args.t_end if args.t_end else schedule.t_end + 2.0 * args.sigma
    n_steps = int(np.ceil((t_end - 0.0) / args.dt))
    t_end = n_steps * args.dt
    cfg = dynamics.PropagatorConfig(dt=args.dt, record_stride=args.stride)
    traj = dynamics.propagate(
        wp0, interaction, (0.0, t_end), cfg, track=path.states,
        progress=(lambda i, n: print(f"  step {i}/{n}", file=sys.stderr))
        if args.verbose
        else None,
    )
    traj.write_csv(args.out)
    target = path.states[-1]
    final_pops = traj.final.populations()
    target_pop = traj.final.population(target)
    top = sorted(final_pops.items(), key=lambda kv: -kv[1])[:5]
    if args.wavepacket_out:
        wp, _ = dynamics.truncate_basis(traj.final, cfg)
        with open(args.wavepacket_out, "w") as fh:
            packed = dynamics.Wavepacket(
                [k for k, a in zip(wp.basis, wp.amps) if abs(a) ** 2 > args.pop_floor],
                np.array([e for k, e, a in zip(wp.basis, wp.energies, wp.amps) if abs(a) ** 2 > args.pop_floor]),
                np.array([a for a in wp.amps if abs(a) ** 2 > args.pop_floor]),
                wp.t,
            )
            fh.write(packed.to_json())
            fh.write("\n")
    _sidecar(
        args.out,
        args,
        {
            "resonance_times_ps": schedule.times,
            "t_end_ps": t_end,
            "target": target._asdict(),
            "target_population": target_pop,
            "top_populations": [
                {"state": k._asdict(), "population": p} for k, p in top
            ],
            "warnings": traj.warnings,
            "wall_time_s": traj.wall_time_s,
        },
    )
    print(f"target {target} population at t={t_end:.1f} ps: {target_pop:.4f}")
    for k, p in top:
        print(f"  {k}: {p:.4f}")
    if traj.warnings:
        for w in traj.warnings:
            print(f"warning: {w}", file=sys.stderr)
        return 1
    return 0


def _packet_from_args(args, spec):
    if args.wavepacket:
        with open(args.wavepacket) as fh:
            wp = dynamics.Wavepacket.from_json(fh.read())
        return observables.packet_from_wavepacket(wp, spec, args.embedding or "b")
    if args.coherence:
        kv = dict(item.split("=", 1) for item in args.coherence.split(","))
        coh = observables.CoherenceSpec(
            axis=kv.get("axis", "b"),
            j_min=int(kv.get("jmin", 10)),
            j_max=int(kv.get("jmax", kv.get("jmin", 10))),
            phases=kv.get("phases", "flat"),
            seed=args.seed,
        )
        return coh.resolve(spec, embedding=args.embedding)
    raise ConfigError("provide --wavepacket FILE or --coherence KEY=VAL[,..]")


def cmd_observe(args):
    spec = _load_molecule(args)
    _check_out(args.out, args.force)
    packet = _packet_from_args(args, spec)
    times = np.linspace(args.tmin, args.tmax, args.tpoints)
    cosines = args.cosines.split(",")
    trace = observables.alignment_trace(
        packet, cosines, times, n_samples=args.samples, seed=args.seed
    )
    trace.write_csv(args.out)
    maxima = {n: float(trace.values[n].max()) for n in trace.values}
    _sidecar(args.out, args, {"maxima": maxima, "n_samples": args.samples})
    for n, v in maxima.items():
        print(f"max cos2_{n} = {v:.4f}")
    return 0


def cmd_density(args):
    spec = _load_molecule(args)
    _check_out(args.out, args.force)
    if not spec.geometry:
        raise ConfigError("molecule file carries no geometry")
    packet = _packet_from_args(args, spec)
    labels, pos = observables.density_cloud(
        packet, spec.geometry, args.n, seed=args.seed, t=args.time
    )
    observables.write_cloud_xyz(labels, pos, args.out)
    _sidecar(args.out, args, {"n_orientations": args.n, "atoms": labels})
    print(f"wrote {args.n} orientations x {len(labels)} atoms to {args.out}")
    return 0


def cmd_axisdist(args):
    spec = _load_molecule(args)
    _check_out(args.out, args.force)
    st = rotor.find_principal_state(
        args.j, args.axis, spec, tau=0, embedding=args.embedding
    )
    th, ph, q = observables.rotation_axis_distribution(st, args.ntheta, args.nphi)
    observables.write_axis_distribution_csv(th, ph, q, args.out)
    _sidecar(
        args.out,
        args,
        {"state": {"J": st.J, "h": st.h, "tau": st.parity_label}, "weak": st.weak},
    )
    print(f"axis distribution of |J={st.J}, h={st.h}, {st.parity_label}> -> {args.out}")
    return 0


def _sweep_one(task):
    (mol, path_file, e0, sigma, beta, dt, jmax, embedding) = task
    spec = rotor.load_molecule(mol)
    with open(path_file) as fh:
        path = coupling.PathSpec.from_json(fh.read(), spec)
    params = centrifuge.CentrifugeParams(E0=e0, beta=beta, sigma=sigma)
    schedule = centrifuge.resonance_schedule(path, params)
    jm = jmax if jmax else path.states[-1].J + 4
    basis = centrifuge.BasisIndex(spec, jm, embedding)
    interaction = centrifuge.InteractionOperator(basis, schedule, params)
    wp0 = dynamics.Wavepacket.pure(basis.keys, basis.energies, StateKey(0, 1, 0, 0))
    t_end = schedule.t_end + 2.0 * sigma
    t_end = int(np.ceil(t_end / dt)) * dt
    cfg = dynamics.PropagatorConfig(dt=dt, record_stride=10**9)
    traj = dynamics.propagate(wp0, interaction, (0.0, t_end), cfg, track=[path.states[-1]])
    return traj.final.population(path.states[-1]), traj.final.norm, traj.warnings


def cmd_sweep(args):
    spec = _load_molecule(args)  # validates the molecule file early
    _check_out(args.out, args.force)
    e0s = [float(x) for x in args.e0.split(",") if x]
    sigmas = [float(x) for x in args.sigma.split(",") if x]
    betas = [float(x) for x in args.beta.split(",") if x]
    if not (e0s and sigmas and betas):
        raise ConfigError("empty parameter grid")
    tasks = [
        (args.molecule, args.path, e0, sigma, beta, args.dt, args.jmax, args.embedding)
        for e0 in e0s
        for sigma in sigmas
        for beta in betas
    ]
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, tasks))
    else:
        results = [_sweep_one(t) for t in tasks]
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["E0_V_per_cm", "sigma_ps", "beta_GHz_per_ps", "target_population", "norm", "warnings"]
        )
        for task, (pop, norm, warns) in zip(tasks, results):
            writer.writerow(
                [f"{task[2]:.6e}", f"{task[3]:.4f}", f"{task[4]:.4f}",
                 f"{pop:.8f}", f"{norm:.10f}", len(warns)]
            )
    best = max(range(len(results)), key=lambda i: results[i][0])
    _sidecar(
        args.out,
        args,
        {
            "grid_size": len(tasks),
            "best": {
                "E0_V_per_cm": tasks[best][2],
                "sigma_ps": tasks[best][3],
                "beta_GHz_per_ps": tasks[best][4],
                "target_population": results[best][0],
            },
        },
    )
    print(f"{len(tasks)} grid points; best population {results[best][0]:.4f}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="rotifuge",
        description="Asymmetric-top rotational control with polarization-rotation pulses",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--molecule", default="d2s", help="molecule JSON file or bundled name")
        sp.add_argument("--embedding", default="b", choices=list(rotor.AXES))
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--force", action="store_true", help="overwrite outputs")
        if out:
            sp.add_argument("--out", required=True)

    sp = sub.add_parser("levels", help="eigenlevel table as CSV")
    common(sp)
    sp.add_argument("--jmax", type=int, default=10)
    sp.add_argument("--threshold", type=float, default=0.7)
    sp.set_defaults(func=cmd_levels)

    sp = sub.add_parser("classify", help="axis-character classification table")
    common(sp)
    sp.add_argument("--jmax", type=int, default=10)
    sp.add_argument("--threshold", type=float, default=0.7)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("path", help="maximum-moment excitation ladder")
    common(sp)
    sp.add_argument("--target-j", type=int, required=True)
    sp.add_argument("--axis", default="b", choices=list(rotor.AXES))
    sp.add_argument("--jmax", type=int, default=0)
    sp.add_argument("--floor", type=float, default=1e-8)
    sp.set_defaults(func=cmd_path)

    sp = sub.add_parser("pulse", help="resonance schedule and envelope")
    common(sp)
    sp.add_argument("--path", required=True)
    sp.add_argument("--e0", type=float, default=1.7e8)
    sp.add_argument("--beta", type=float, default=60.0)
    sp.add_argument("--sigma", type=float, default=7.0)
    sp.add_argument("--t0", type=float, default=0.0)
    sp.add_argument("--envelope-csv", default="")
    sp.add_argument("--tstep", type=float, default=0.05)
    sp.set_defaults(func=cmd_pulse)

    sp = sub.add_parser("propagate", help="drive the ladder and record populations")
    common(sp)
    sp.add_argument("--path", required=True)
    sp.add_argument("--e0", type=float, default=1.7e8)
    sp.add_argument("--beta", type=float, default=60.0)
    sp.add_argument("--sigma", type=float, default=7.0)
    sp.add_argument("--t0", type=float, default=0.0)
    sp.add_argument("--dt", type=float, default=0.01)
    sp.add_argument("--t-end", type=float, default=0.0)
    sp.add_argument("--jmax", type=int, default=0)
    sp.add_argument("--stride", type=int, default=10)
    sp.add_argument("--pop-floor", type=float, default=1e-10)
    sp.add_argument("--wavepacket-out", default="")
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(func=cmd_propagate)

    sp = sub.add_parser("observe", help="alignment-cosine time traces")
    common(sp)
    sp.add_argument("--wavepacket", default="")
    sp.add_argument("--coherence", default="", help="axis=a,jmin=14,jmax=20,phases=flat")
    sp.add_argument("--cosines", default="bZX")
    sp.add_argument("--tmin", type=float, default=0.0)
    sp.add_argument("--tmax", type=float, default=1.0)
    sp.add_argument("--tpoints", type=int, default=201)
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.set_defaults(func=cmd_observe)

    sp = sub.add_parser("density", help="nuclear density point cloud (XYZ)")
    common(sp)
    sp.add_argument("--wavepacket", default="")
    sp.add_argument("--coherence", default="")
    sp.add_argument("--n", type=int, default=20000)
    sp.add_argument("--time", type=float, default=None)
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("axisdist", help="body-frame rotation-axis distribution")
    common(sp)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--axis", default="b", choices=list(rotor.AXES))
    sp.add_argument("--ntheta", type=int, default=91)
    sp.add_argument("--nphi", type=int, default=181)
    sp.set_defaults(func=cmd_axisdist)

    sp = sub.add_parser("sweep", help="pulse-parameter grid scan")
    common(sp)
    sp.add_argument("--path", required=True)
    sp.add_argument("--e0", default="1.7e8")
    sp.add_argument("--sigma", default="7.0")
    sp.add_argument("--beta", default="60.0")
    sp.add_argument("--dt", type=float, default=0.01)
    sp.add_argument("--jmax", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_sweep)

    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PathNotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NumericError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
