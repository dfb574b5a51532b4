import java.util.Scanner;

public class Main
{
    static Scanner sc = new Scanner(System.in);

    /**
     * Greatest common divisor of two numbers.
     */
    public static long gcd(long a, long b)
    {
        // Euclid's algorithm
        while (b != 0)
        {
            long temp = a % b;
            a = b;
            b = temp;
        }
        return a;
    }

    /**
     * Greatest common divisor of all elements.
     */
    public static long gcdOfArray(long[] nums)
    {
        if (nums.length == 0)
        {
            return 0;
        }
        long result = 0;
        for (int i = 0; i < nums.length; i++)
        {
            result = gcd(result, nums[i]);
        }
        return result;
    }

    /**
     * Read one input block and print the answer.
     */
    public static void solve()
    {
        // Read the input
        long n = sc.nextLong();
        long[] nums = new long[n];
        for (int i = 0; i < n; i++)
        {
            nums[i] = sc.nextLong();
        }

        long result2 = gcdOfArray(nums);
        // Output the answer
        System.out.println(result2);
    }

    /**
     * Number of pairs whose sum equals the target.
     */
    public static long countPairs(long[] nums, long target)
    {
        if (nums.length == 0)
        {
            return 0;
        }
        // Check every unordered pair
        long count = 0;
        for (int i = 0; i < nums.length; i++)
        {
            for (int j = i + 1; j < nums.length; j++)
            {
                if (nums[i] + nums[j] == target)
                {
                    count++;
                }
            }
        }

        return count;
    }

    /**
     * Read one input block and print the answer.
     */
    public static void solve2()
    {
        // Read the input
        long n = sc.nextLong();
        long[] nums = new long[n];
        for (int i = 0; i < n; i++)
        {
            nums[i] = sc.nextLong();
        }

        long target = sc.nextLong();

        long result = countPairs(nums, target);
        // Output the answer
        System.out.println(result);
    }

    public static void main(String[] args)
    {
        solve();
        solve2();
    }
}
