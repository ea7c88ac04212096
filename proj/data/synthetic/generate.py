"""Regenerates the bundled synthetic datasets under data/synthetic/.

implied/    ~2 years of weekday index levels, quarterly EPS and daily
            10-year yields (percent). The earnings yield starts above the
            bond yield and ends below it, so the implied ERP changes sign.
three_day/  a 3-day dataset small enough to evaluate by hand.
annual_returns.csv  ten years of annual stock, T-bill and T-bond returns
            in percent.
"""
import datetime as dt
import math
import pathlib

HERE = pathlib.Path(__file__).resolve().parent


def write(path, header, rows):
    with open(path, "w", newline="\n") as f:
        f.write(header + "\n")
        for r in rows:
            f.write(",".join(r) + "\n")


def implied():
    start, end = dt.date(2003, 1, 1), dt.date(2004, 12, 31)
    days = []
    d = start
    while d <= end:
        if d.weekday() < 5:
            days.append(d)
        d += dt.timedelta(days=1)
    n = len(days)
    prices = []
    yields = []
    for t, day in enumerate(days):
        level = 1000.0 * (1.0 + 0.7 * t / (n - 1)) * (1.0 + 0.02 * math.sin(t / 15.0))
        prices.append((day.isoformat(), f"{level:.2f}"))
        if t % 37 != 36:  # the yield source misses some days
            y = 4.50 + 0.20 * math.sin(t / 40.0)
            yields.append((day.isoformat(), f"{y:.2f}"))
    eps = []
    quarter_ends = [dt.date(2002, 12, 31)] + [
        dt.date(y, m, 31 if m in (3, 12) else 30) for y in (2003, 2004) for m in (3, 6, 9, 12)
    ]
    for i, q in enumerate(quarter_ends):
        eps.append((q.isoformat(), f"{60.0 + 0.5 * i:.2f}"))
    out = HERE / "implied"
    write(out / "prices.csv", "date,close", prices)
    write(out / "eps.csv", "date,eps", eps)
    write(out / "yields.csv", "date,rate", yields)


def three_day():
    out = HERE / "three_day"
    write(out / "prices.csv", "date,close", [("2009-01-05", "1000"), ("2009-01-06", "1010"), ("2009-01-07", "990")])
    write(out / "eps.csv", "date,eps", [("2009-01-05", "50"), ("2009-01-07", "60")])
    write(out / "yields.csv", "date,rate", [("2009-01-05", "4.0"), ("2009-01-06", "4.1"), ("2009-01-07", "4.2")])


def annual():
    stocks = [-9.10, -11.89, -22.10, 28.68, 10.88, 4.91, 15.79, 5.49, -37.00, 26.46]
    bills = [5.85, 3.45, 1.62, 1.02, 1.38, 3.16, 4.73, 4.41, 1.47, 0.10]
    bonds = [16.66, 5.57, 15.12, 0.38, 4.49, 2.87, 1.96, 10.21, 20.10, -11.12]
    rows = []
    for i, year in enumerate(range(2000, 2010)):
        rows.append((f"{year}-12-31", f"{stocks[i]:.2f}", f"{bills[i]:.2f}", f"{bonds[i]:.2f}"))
    write(HERE / "annual_returns.csv", "date,stocks,tbills,tbonds", rows)


if __name__ == "__main__":
    implied()
    three_day()
    annual()
