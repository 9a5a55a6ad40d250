"""Command-line front end: every command prints JSON on stdout.

Exit codes: 0 when all checks pass, 1 when a mathematical check fails,
2 for malformed input.
"""

import argparse
import json
import sys

from .scalars import ParseError, parse_qrational


class UsageError(Exception):
    pass


def parse_scalar(text):
    try:
        return parse_qrational(text)
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def parse_scalar_list(text):
    if text is None or not text.strip():
        return []
    return [parse_scalar(part) for part in _split_top(text)]


def _split_top(text, sep=','):
    """Split on sep outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if ch == sep and depth == 0:
            out.append(''.join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append(''.join(cur))
    return [p.strip() for p in out]


def parse_phi(text):
    """``beta=<scalar>;roots=<scalar>,<scalar>,...`` -> NodePolynomial."""
    from .hwclass import NodePolynomial
    fields = {}
    for part in text.split(';'):
        part = part.strip()
        if not part:
            continue
        if '=' not in part:
            raise UsageError(f'expected key=value in --phi, got {part!r}')
        key, val = part.split('=', 1)
        fields[key.strip()] = val
    unknown = set(fields) - {'beta', 'roots'}
    if unknown:
        raise UsageError(f'unknown --phi fields: {sorted(unknown)}')
    beta = parse_scalar(fields.get('beta', '1'))
    if beta.is_zero():
        raise UsageError('beta must be nonzero')
    roots = parse_scalar_list(fields.get('roots', ''))
    return NodePolynomial(beta, roots)


def _node_params(args):
    n = args.n
    if n is None or n < 2:
        raise UsageError('--n must be at least 2')
    Q = parse_scalar_list(args.Q) if args.Q is not None else []
    if not Q:
        from .scalars import ZERO
        Q = [ZERO] * (n - 1)
    if len(Q) != n - 1:
        raise UsageError(f'--Q needs {n - 1} entries for n={n}')
    phis = [parse_phi(p) for p in (args.phi or [])]
    if len(phis) != n - 1:
        raise UsageError(f'--phi must be given once per node ({n - 1} times)')
    return Q, phis


# -- commands --------------------------------------------------------------------

def cmd_identities(args):
    from .symfun import identity_suite
    records = []
    for k in range(1, args.maxk + 1):
        records += identity_suite(k, args.T or 8, range(args.seed, args.seed + args.seeds))
    failed = [r for r in records if not r['pass']]
    return {'checks': len(records), 'failures': failed, 'pass': not failed}, not failed


def cmd_classify(args):
    from .hwclass import in_CxQ, node_json
    Q, phis = _node_params(args)
    nodes = []
    for i, (Qi, phi) in enumerate(zip(Q, phis), start=1):
        try:
            nodes.append(node_json(i, Qi, phi, args.T))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    ok = all(in_CxQ(Qi, phi) for Qi, phi in zip(Q, phis))
    return {'n': args.n, 'nodes': nodes, 'canonical': ok}, True


def cmd_canonicalize(args):
    from .hwclass import canonicalize, equivalent
    Q = parse_scalar_list(args.Q)
    if len(Q) != 1 or not args.phi or len(args.phi) != 1:
        raise UsageError('canonicalize takes one --Q value and one --phi')
    phi = parse_phi(args.phi[0])
    try:
        canon = canonicalize(Q[0], phi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = equivalent(Q[0], phi, canon) if not Q[0].is_zero() else True
    return {'Q': str(Q[0]), 'phi': phi.to_json(), 'canonical': canon.to_json(), 'equivalent': ok}, ok


def cmd_psi_series(args):
    from .hwclass import hw_from_poly, psi_from_hw, psi_series
    Q = parse_scalar_list(args.Q)
    if len(Q) != 1 or not args.phi or len(args.phi) != 1:
        raise UsageError('psi-series takes one --Q value and one --phi')
    phi = parse_phi(args.phi[0])
    T = args.T or 8
    try:
        series = psi_series(Q[0], phi, T)
        direct = psi_from_hw(Q[0], hw_from_poly(Q[0], phi, T + 1))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = direct.truncate(T) == series.truncate(T)
    coeffs = [{'power': e, 'coeff': str(series.coeff(e))} for e in range(series.low, T + 1)]
    return {'Q': str(Q[0]), 'phi': phi.to_json(), 'T': T, 'series': coeffs, 'match': ok}, ok


def _load_spec(text):
    try:
        if text.lstrip().startswith('{'):
            return json.loads(text)
        with open(text) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f'cannot read module spec: {exc}') from None


def _build(args):
    from .repmodule import build_from_spec
    if not args.spec:
        raise UsageError('--spec is required')
    spec = _load_spec(args.spec)
    try:
        return build_from_spec(spec, args.T or 4)
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f'malformed module spec: {exc}') from None


def cmd_build(args):
    from .repmodule import module_report, relations_ok
    M = _build(args)
    rep = module_report(M)
    ok = relations_ok(rep['relationChecks'])
    return rep, ok


def cmd_verify(args):
    from .repmodule import classify_roundtrip, relations_ok, verify_appendix_identities, verify_relations
    if args.spec:
        M = _build(args)
        rep = {'dim': M.dim, 'relationChecks': verify_relations(M, details=True)}
        ok = relations_ok(rep['relationChecks'])
        if M.n1 == 1 and args.kmax:
            ids = verify_appendix_identities(M, args.kmax)
            rep['rankOneIdentities'] = ids
            ok = ok and all(r['pass'] is not False for r in ids)
        return rep, ok
    Q, phis = _node_params(args)
    try:
        rep = classify_roundtrip(Q, phis, args.T or 4)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return rep, rep['pass']


def cmd_pbw(args):
    from .pbwcheck import pbw_verify
    if args.n is None or args.n < 2:
        raise UsageError('--n must be at least 2')
    T = args.T if args.T is not None else args.maxs
    try:
        rep = pbw_verify(args.n, args.maxweight, args.maxs, T)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return rep, rep['all_match']


def cmd_weyl_hw(args):
    from .hwclass import weyl_hw
    from .symfun import Partition
    try:
        nbar = [int(x) for x in args.nbar.split(',')]
        lam = [Partition(tuple(int(x) for x in comp.split(',') if x.strip()))
               for comp in args.lam.split(';')]
    except (AttributeError, ValueError) as exc:
        raise UsageError(f'bad --nbar/--lam: {exc}') from None
    Qhat = parse_scalar_list(args.Qhat)
    try:
        rows = weyl_hw(nbar, lam, Qhat, args.T or 4)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = [{'node': r['node'], 'Q': str(r['Q']), 'phi': r['phi'].to_json(), **r['hw'].to_json()}
           for r in rows]
    return {'nbar': nbar, 'nodes': out}, True


COMMANDS = {
    'identities': cmd_identities,
    'classify': cmd_classify,
    'canonicalize': cmd_canonicalize,
    'psi-series': cmd_psi_series,
    'build': cmd_build,
    'verify': cmd_verify,
    'pbw': cmd_pbw,
    'weyl-hw': cmd_weyl_hw,
}


def build_parser():
    p = argparse.ArgumentParser(prog='qcurrent', description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest='command', required=True)

    def common(sp):
        sp.add_argument('--n', type=int, help='n of sl_n (rank + 1)')
        sp.add_argument('--Q', help='comma-separated node parameters')
        sp.add_argument('--phi', action='append', help='beta=..;roots=..,.. (repeat per node)')
        sp.add_argument('--T', type=int, help='truncation level')
        sp.add_argument('--seed', type=int, default=0)
        sp.add_argument('--format', choices=['json'], default='json')
        return sp

    sp = common(sub.add_parser('identities', help='symmetric-function identity suite'))
    sp.add_argument('--maxk', type=int, default=5)
    sp.add_argument('--seeds', type=int, default=50)
    common(sub.add_parser('classify', help='highest weight attached to node polynomials'))
    common(sub.add_parser('canonicalize', help='canonical representative of a polynomial'))
    common(sub.add_parser('psi-series', help='eigen-series of the Psi generating function'))
    sp = common(sub.add_parser('build', help='build a module from a JSON spec'))
    sp.add_argument('--spec', help='JSON text or path')
    sp = common(sub.add_parser('verify', help='verify a module or a classification round trip'))
    sp.add_argument('--spec', help='JSON text or path')
    sp.add_argument('--kmax', type=int, default=0, help='also check rank-one identities up to k')
    sp = common(sub.add_parser('pbw', help='graded dimensions against PBW counts'))
    sp.add_argument('--maxweight', type=int, default=2)
    sp.add_argument('--maxs', type=int, default=2)
    sp = common(sub.add_parser('weyl-hw', help='highest weights of Weyl modules'))
    sp.add_argument('--nbar', required=True, help='block sizes, e.g. 2,2')
    sp.add_argument('--lam', required=True, help='partitions separated by ;, e.g. "2,1;1"')
    sp.add_argument('--Qhat', required=True, help='comma-separated block parameters')
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, ok = COMMANDS[args.command](args)
    except UsageError as exc:
        print(json.dumps({'error': str(exc)}), file=sys.stderr)
        return 2
    except RecursionError:
        print(json.dumps({'error': 'input too large'}), file=sys.stderr)
        return 2
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write('\n')
    return 0 if ok else 1


if __name__ == '__main__':
    sys.exit(main())
