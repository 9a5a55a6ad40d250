"""Graded dimensions of the positive half next to PBW monomial counts.

    python demos/pbw_table.py
"""

from qcurrent.pbwcheck import pbw_verify

for n, maxweight in [(2, 3), (3, 2)]:
    rep = pbw_verify(n, maxweight, 3, 3)
    print(f'n={n}: all slices match: {rep["all_match"]}')
    print(f'  {"weight":>10} {"s":>2} {"words":>6} {"dim":>4} {"pbw":>4}')
    for r in rep['slices']:
        if any(r['gamma']):
            print(f'  {str(tuple(r["gamma"])):>10} {r["s"]:>2} {r["words"]:>6} {r["dim"]:>4} {r["pbw_count"]:>4}')
    print()
