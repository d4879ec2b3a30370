#!/usr/bin/env python3
"""Rebuild the benchmark CSVs under data/ from their public sources.

The raw UCI / ProPublica files are redistributed inside a few PyPI wheels,
which makes them reachable from environments that can only talk to a
package index. Each source wheel is fetched, the raw file is pulled out,
and a clean RFC-4180 CSV with a header row is written. No rows are dropped
here; missing values are kept as "?" and all filtering happens in the
dataset configs.

    python3 scripts/prepare_datasets.py [--out data] [--cache /tmp/fairway-wheels]
"""

import argparse
import csv
import io
import pathlib
import urllib.request
import zipfile

WHEELS = {
    "responsibly": "https://files.pythonhosted.org/packages/44/64/"
    "72211de680c21fe6cea67da182db965861603d311c67839ab39cc7226780/"
    "responsibly-0.1.2-py3-none-any.whl",
    "ethicml": "https://files.pythonhosted.org/packages/ae/98/"
    "207e9776732175d262f38411d519347a820c066fa01cbc845e99aa909c84/"
    "ethicml-1.3.0-py3-none-any.whl",
    "orange3": "https://files.pythonhosted.org/packages/ca/22/"
    "a3a8147f2d6a6f7f3edbcd0422d1d94f93f2b3f5c203603e4c8096c21b21/"
    "orange3-3.40.0-cp310-cp310-manylinux_2_27_x86_64.manylinux_2_28_x86_64.whl",
}

ADULT_COLUMNS = [
    "age", "workclass", "fnlwgt", "education", "education_num",
    "marital_status", "occupation", "relationship", "race", "sex",
    "capital_gain", "capital_loss", "hours_per_week", "native_country",
    "income",
]

GERMAN_COLUMNS = [
    "checking_status", "duration", "credit_history", "purpose",
    "credit_amount", "savings", "employment", "installment_rate",
    "personal_status", "other_debtors", "residence_since", "property",
    "age", "other_installment_plans", "housing", "existing_credits", "job",
    "num_dependents", "telephone", "foreign_worker", "credit_risk",
]

COMPAS_COLUMNS = [
    "sex", "age", "age_cat", "race", "juv_fel_count", "juv_misd_count",
    "juv_other_count", "priors_count", "days_b_screening_arrest",
    "c_charge_degree", "is_recid", "score_text", "two_year_recid",
]

HEART_COLUMNS = [
    "age", "sex", "chest_pain", "rest_sbp", "cholesterol",
    "fasting_blood_sugar", "rest_ecg", "max_hr", "exercise_angina",
    "st_depression", "st_slope", "major_vessels", "thal",
    "diameter_narrowing",
]


def fetch(name, cache):
    cache.mkdir(parents=True, exist_ok=True)
    path = cache / WHEELS[name].rsplit("/", 1)[1]
    if not path.exists():
        print(f"fetching {name} ...")
        with urllib.request.urlopen(WHEELS[name]) as r:
            path.write_bytes(r.read())
    return zipfile.ZipFile(path)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def adult(wheel, out):
    rows = []
    for member in ("adult.data", "adult.test"):
        text = wheel.read(f"responsibly/dataset/adult/{member}").decode()
        for line in text.splitlines():
            if not line.strip() or line.startswith("|"):
                continue
            fields = [v.strip() for v in line.split(",")]
            fields[-1] = fields[-1].rstrip(".")
            rows.append(fields)
    write_csv(out / "adult.csv", ADULT_COLUMNS, rows)


def german(wheel, out):
    text = wheel.read("responsibly/dataset/german/german.data").decode()
    rows = [line.split() for line in text.splitlines() if line.strip()]
    write_csv(out / "german.csv", GERMAN_COLUMNS, rows)


def compas(wheel, out):
    text = wheel.read(
        "responsibly/dataset/compas/compas-scores-two-years.csv").decode()
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    # The raw file repeats some column names; keep the first occurrence.
    index = {}
    for i, name in enumerate(header):
        index.setdefault(name, i)
    rows = [[r[index[c]] for c in COMPAS_COLUMNS] for r in reader]
    write_csv(out / "compas.csv", COMPAS_COLUMNS, rows)


def default_credit(wheel, out):
    text = wheel.read("ethicml/data/csvs/UCI_Credit_Card.csv").decode()
    reader = csv.DictReader(io.StringIO(text))
    pay = ["PAY_0", "PAY_2", "PAY_3", "PAY_4", "PAY_5", "PAY_6"]
    bills = [f"BILL_AMT{i}" for i in range(1, 7)]
    amts = [f"PAY_AMT{i}" for i in range(1, 7)]
    header = (["LIMIT_BAL", "SEX", "EDUCATION", "MARRIAGE", "AGE"] + pay
              + bills + amts + ["default_payment"])
    rows = []
    for r in reader:
        # This copy ships EDUCATION / MARRIAGE one-hot and SEX as 0/1
        # (male/female); restore the codebook values (1 = male, 2 = female).
        edu = next(i for i in range(7) if r[f"EDUCATION_{i}"] == "1")
        mar = next(i for i in range(4) if r[f"MARRIAGE_{i}"] == "1")
        rows.append(
            [r["LIMIT_BAL"], str(int(r["SEX"]) + 1), str(edu), str(mar), r["AGE"]]
            + [r[c] for c in pay + bills + amts]
            + [r["default-payment-next-month"]])
    write_csv(out / "default_credit.csv", header, rows)


def heart(wheel, out):
    text = wheel.read("Orange/datasets/heart_disease.tab").decode()
    lines = text.splitlines()[3:]
    rows = [line.split("\t") for line in lines if line.strip()]
    write_csv(out / "heart.csv", HEART_COLUMNS, rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="data")
    ap.add_argument("--cache", default="/tmp/fairway-wheels")
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cache = pathlib.Path(args.cache)

    responsibly = fetch("responsibly", cache)
    adult(responsibly, out)
    german(responsibly, out)
    compas(responsibly, out)
    default_credit(fetch("ethicml", cache), out)
    heart(fetch("orange3", cache), out)


if __name__ == "__main__":
    main()
