"""Print the existence table, one row per admissible profile."""
from whtorsion.tables import all_rows, consistency_problems, format_row

for profile, row in all_rows():
    print(format_row(profile, row))

problems = consistency_problems()
print("\nconsistency:", "ok" if not problems else problems)
