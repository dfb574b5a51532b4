import java.util.Scanner;

public class Main {
  static Scanner sc = new Scanner(System.in);

  /**
   * Check whether a number is prime.
   */
  public static boolean isPrime(long num) {
    if (num < 2) {
      return false;
    }
    long divisor = 2;
    while (divisor * divisor <= num) {
      if (num % divisor == 0) {
        return false;
      }
      divisor++;
    }
    return true;
  }

  /**
   * Count the primes up to the limit.
   */
  public static long countPrimes(long n) {
    long count = 0;
    for (int i = 2; i < n + 1; i++) {
      if (isPrime(i)) {
        count++;
      }
    }
    return count;
  }

  /**
   * Read one input block and print the answer.
   */
  public static void solve() {
    long n = sc.nextLong();
    System.out.println(countPrimes(n));
  }

  /**
   * Greatest common divisor of two numbers.
   */
  public static long gcd(long a, long b) {
    while (b != 0) {
      long temp = a % b;
      a = b;
      b = temp;
    }
    return a;
  }

  /**
   * Greatest common divisor of all elements.
   */
  public static long gcdOfArray(long[] nums) {
    if (nums.length == 0) {
      return 0;
    }
    long result = 0;
    for (int i = 0; i < nums.length; i++) {
      result = gcd(result, nums[i]);
    }
    return result;
  }

  /**
   * Read one input block and print the answer.
   */
  public static void solve2() {
    long n = sc.nextLong();
    long[] nums = new long[n];
    for (int i = 0; i < n; i++) {
      nums[i] = sc.nextLong();
    }
    System.out.println(gcdOfArray(nums));
  }

  /**
   * Index of the first element that is not less than the target.
   */
  public static int lowerBound(long[] nums, long target) {
    int left = 0;
    int right = nums.length;
    while (left < right) {
      int mid = (left + right) / 2;
      if (nums[mid] < target) {
        left = mid + 1;
      } else {
        right = mid;
      }
    }
    return left;
  }

  /**
   * Read one input block and print the answer.
   */
  public static void solve3() {
    long n = sc.nextLong();
    long[] nums = new long[n];
    for (int i = 0; i < n; i++) {
      nums[i] = sc.nextLong();
    }
    long q = sc.nextLong();
    for (int i = 0; i < q; i++) {
      long target = sc.nextLong();
      System.out.println(lowerBound(nums, target));
    }
  }

  /**
   * Return the n-th Fibonacci number modulo a prime.
   */
  public static long fibonacci(long n) {
    if (n < 2) {
      return n;
    }
    long MOD = 1000000007;
    long[] dp = new long[n + 2];
    dp[1] = 1;
    for (int i = 2; i < n + 1; i++) {
      dp[i] = (dp[i - 1] + dp[i - 2]) % MOD;
    }
    return dp[n];
  }

  /**
   * Read one input block and print the answer.
   */
  public static void solve4() {
    long n = sc.nextLong();
    System.out.println(fibonacci(n));
  }

  public static void main(String[] args) {
    solve();
    solve2();
    solve3();
    solve4();
  }
}
