"""
Safe app runner with detailed error reporting
"""
import sys
import traceback

try:
    import app
except Exception as e:
    print("\n" + "=" * 60, file=sys.stderr)
    print("ERROR DURING STARTUP", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    print(f"\nError type: {type(e).__name__}", file=sys.stderr)
    print(f"Error message: {str(e)}\n", file=sys.stderr)
    print("Full traceback:", file=sys.stderr)
    print("-" * 60, file=sys.stderr)
    traceback.print_exc()
    print("-" * 60, file=sys.stderr)
    sys.exit(2)

sys.exit(app.main())
