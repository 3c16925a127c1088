"""The edge gadget: verification report and the local states behind it."""

from immanants.gadgets import ACTIVE, PASSIVE, enumerate_local_states, load_gadget, verify_gadget


def main() -> None:
    gadget = load_gadget()
    print(verify_gadget(gadget))
    print()
    for name, degrees in (("passive", PASSIVE), ("active", ACTIVE)):
        print(f"{name} local states:")
        for state in enumerate_local_states(gadget, degrees):
            w = "w" if state.w_power else "1"
            print(f"  arcs {sorted(state.arcs)} format {state.format} weight {state.coefficient}*{w}")


if __name__ == "__main__":
    main()
