"""Print the e1-highest components of the F4 generators next to the closed forms
they are compared against, with the proportionality factor when they differ."""

from z2contract.weylf4 import NAMES, proportionality, expected_highest_components, highest_components


def main():
    for nm, got, want in zip(NAMES, highest_components(), expected_highest_components()):
        status = "match" if got == want else f"differs, ratio {proportionality(got, want)}"
        print(f"{nm:4} bideg {tuple(got.bidegree())}  {status}")
        print(f"     computed: {got.to_text()}")
        if got != want:
            print(f"     expected: {want.to_text()}")


if __name__ == "__main__":
    main()
