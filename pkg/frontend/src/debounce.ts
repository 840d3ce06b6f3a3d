/**
 * Delay a call until `ms` of silence: each invocation cancels the pending
 * timer, so a burst of toggles produces exactly one trailing execution.
 */
export function debounce(fn: () => void, ms: number): () => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return () => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      fn();
    }, ms);
  };
}
